"""Command-line entry point.

Commands: debug (interactive or scripted session), check (optimal set,
per-strategy picks, relation check), bench (CSV comparison), gen (random
tree files), serve (session service for the web UI).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import analysis, bench, formats
from .met import Answer, Met
from .session import SessionError, start_session, step_session
from .strategies import (
    StrategyId,
    applicability_error,
    select_node,
    strategy_from_token,
)

_YES = {"yes", "y"}
_NO = {"no", "n"}


def _parse_answer(text: str) -> Answer | None:
    token = text.strip().lower()
    if token in _YES:
        return Answer.CORRECT
    if token in _NO:
        return Answer.WRONG
    return None


def _load(path: str) -> Met:
    return formats.load_et(path)


def cmd_debug(args: argparse.Namespace) -> int:
    met = _load(args.file)
    strategy = strategy_from_token(args.strategy)
    script: list[Answer] | None = None
    if args.script is not None:
        script = []
        for part in args.script.split(","):
            answer = _parse_answer(part)
            if answer is None:
                print(f"error: bad script answer {part!r} (want YES or NO)", file=sys.stderr)
                return 2
            script.append(answer)

    print("Starting Debugging Session...")
    state = start_session(met, strategy)
    k = 1
    while not state.finished:
        label = state.pending_node().label
        if script is not None:
            if not script:
                print(f"error: script exhausted before question ({k})", file=sys.stderr)
                return 2
            answer = script.pop(0)
            word = "YES" if answer is Answer.CORRECT else "NO"
            print(f"({k}) {label}? {word}")
        else:
            answer = None
            while answer is None:
                try:
                    raw = input(f"({k}) {label}? ")
                except EOFError:
                    print("error: input closed before the session finished", file=sys.stderr)
                    return 2
                answer = _parse_answer(raw)
                if answer is None:
                    print("please answer YES or NO")
        state = step_session(state, answer)
        k += 1

    report = state.report
    assert report is not None
    print()
    if report.buggy is not None:
        print(f"Bug found in node: {report.buggy_label}")
    else:
        print("No bug has been found")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    met = _load(args.file)
    label = {n: met.nodes[n].label for n in met.nodes}

    best = analysis.optimal_set(met)
    print(f"tree: {met.name} ({len(met.nodes)} nodes)")
    print("optimal set: " + ", ".join(f"{n} ({label[n]})" for n in sorted(best)))
    for sid in StrategyId:
        reason = applicability_error(met, sid)
        if reason is not None:
            print(f"{sid.value}: skipped ({reason})")
            continue
        selection = select_node(met, sid)
        extra = ""
        if selection.alternatives is not None and len(selection.alternatives) > 1:
            extra = " (alternatives: " + ", ".join(map(str, sorted(selection.alternatives))) + ")"
        print(f"{sid.value}: {selection.chosen} ({label[selection.chosen]}){extra}")

    violations = analysis.check_theorems(met)
    if violations:
        print(f"relation check: {len(violations)} violation(s)")
        for v in violations:
            print(f"  {v.predicate} {v.nodes}: {v.detail}")
    else:
        print("relation check: no violations")
    return 0


def _collect_paths(paths: list[str]) -> list[Path]:
    files: list[Path] = []
    for raw in paths:
        p = Path(raw)
        if p.is_dir():
            files.extend(sorted(p.glob("*.json")))
        else:
            files.append(p)
    return files


def cmd_bench(args: argparse.Namespace) -> int:
    files = _collect_paths(args.paths)
    if not files:
        print("error: no input files", file=sys.stderr)
        return 2
    corpus = [formats.load_et(f) for f in files]
    if args.strategies:
        strategies = [strategy_from_token(t) for t in args.strategies.split(",")]
    else:
        strategies = list(StrategyId)
    rows, skips = bench.run_bench(corpus, strategies, include_nobug=args.include_nobug)
    csv_text = bench.rows_to_csv(rows)
    if args.out:
        Path(args.out).write_text(csv_text, encoding="utf-8")
    else:
        sys.stdout.write(csv_text)
    for skip in skips:
        print(f"skip: {skip.benchmark} {skip.strategy.value}: {skip.reason}", file=sys.stderr)
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    weight_range = None
    if args.weights and args.weights != "uniform":
        try:
            lo, hi = (float(part) for part in args.weights.split(":"))
        except ValueError:
            print(f"error: bad --weights {args.weights!r} (want 'uniform' or 'lo:hi')",
                  file=sys.stderr)
            return 2
        weight_range = (lo, hi)
    seed = args.seed if args.seed is not None else int(os.environ.get("ADQ_SEED", "0"))
    params = formats.GenParams(
        node_count=args.nodes,
        max_children=args.max_children,
        weight_range=weight_range,
        zero_weight_prob=args.zero_prob,
        seed=seed,
        root_marked_wrong=args.wrong_root,
        name=args.name or "",
    )
    met = formats.gen_random(params)
    data = formats.serialize_et(met)
    if args.out:
        Path(args.out).write_bytes(data)
    else:
        sys.stdout.write(data.decode("utf-8"))
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    from . import server

    httpd = server.create_server(
        host=args.host, port=args.port, static_dir=args.static_dir
    )
    host, port = httpd.server_address[:2]
    print(f"serving on http://{host}:{port}/ (Ctrl-C to stop)")
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="adq",
        description="Algorithmic debugging with optimal divide-and-query node selection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("debug", help="run an interactive or scripted debugging session")
    p.add_argument("file", help="execution-tree JSON file")
    p.add_argument("--strategy", default=StrategyId.DQO_GENERAL.value,
                   help="selection strategy token (default: dqo-general)")
    p.add_argument("--script", default=None,
                   help="comma-separated YES/NO answers instead of interactive input")
    p.set_defaults(fn=cmd_debug)

    p = sub.add_parser("check", help="print optimal set, strategy picks and relation check")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("bench", help="compare strategies over tree files, emit CSV")
    p.add_argument("paths", nargs="+", help="tree files or directories of *.json")
    p.add_argument("--strategies", default=None,
                   help="comma-separated strategy tokens (default: all)")
    p.add_argument("--out", default=None, help="CSV output path (default: stdout)")
    p.add_argument("--include-nobug", action=argparse.BooleanOptionalAction, default=True,
                   help="count the bug-free scenario (default: on)")
    p.set_defaults(fn=cmd_bench)

    p = sub.add_parser("gen", help="generate a seeded random tree file")
    p.add_argument("--nodes", type=int, required=True)
    p.add_argument("--max-children", type=int, default=4)
    p.add_argument("--weights", default="uniform", help="'uniform' or 'lo:hi' decimal range")
    p.add_argument("--zero-prob", type=float, default=0.0,
                   help="probability a node weighs zero")
    p.add_argument("--seed", type=int, default=None,
                   help="generator seed (default: $ADQ_SEED or 0)")
    p.add_argument("--wrong-root", action="store_true",
                   help="mark the root Wrong instead of Undefined")
    p.add_argument("--name", default=None)
    p.add_argument("--out", default=None, help="output path (default: stdout)")
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("serve", help="serve the session API and web UI")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8321)
    p.add_argument("--static-dir", default=None,
                   help="directory with the built web UI (default: ./frontend/dist if present)")
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, SessionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
