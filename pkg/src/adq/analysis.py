"""Brute-force ground truth: exhaustive optimal sets, exact expected session
costs over every possible bug placement, and checkers for the algebraic
relations the path-walking selectors rely on.

Everything here enumerates; nothing shares code with the selectors it is
used to validate. Costs are exact rationals so comparisons never wobble.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .met import (
    Met,
    NodeId,
    approx_eq,
    approx_ge,
    approx_gt,
    approx_le,
    approx_lt,
    compute_metrics,
    parent_map,
    sea,
)
from .session import run_session, simulated_oracle
from .strategies import PreconditionError, StrategyId

#: A planted bug location; None is the bug-free scenario.
Scenario = NodeId | None


def scenarios(met: Met, include_nobug: bool = True) -> list[Scenario]:
    """Every possible bug placement: each Undefined node, plus no bug at all."""
    out: list[Scenario] = sorted(sea(met))
    if include_nobug:
        out.append(None)
    return out


@dataclass(frozen=True)
class ExpectedCost:
    """Total questions over all scenarios, kept exact."""

    total: int
    scenarios: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.total, self.scenarios)


def optimal_set(met: Met) -> set[NodeId]:
    """All Undefined nodes minimizing |down - up|, by exhaustive enumeration."""
    area = sea(met)
    if not area:
        raise PreconditionError("empty search area")
    metrics = compute_metrics(met)
    gap = {n: abs(metrics[n].down - metrics[n].up) for n in area}
    best = min(gap.values())
    return {n for n in area if approx_eq(gap[n], best)}


def expected_questions(
    met: Met,
    strategy: StrategyId,
    first_pick: NodeId | None = None,
    include_nobug: bool = True,
) -> ExpectedCost:
    """Mean question count of a full session over every scenario.

    ``first_pick`` forces the opening question only; the strategy under
    test drives the rest of each session.
    """
    cases = scenarios(met, include_nobug=include_nobug)
    if not cases:
        raise PreconditionError("no scenarios: empty search area")
    total = 0
    for case in cases:
        report = run_session(met, strategy, simulated_oracle(met, case), first_pick=first_pick)
        total += report.questions
    return ExpectedCost(total=total, scenarios=len(cases))


@dataclass(frozen=True)
class Violation:
    predicate: str
    nodes: tuple[NodeId, ...]
    detail: str


def _is_uniform(met: Met) -> bool:
    weights = {node.wi for node in met.nodes.values()}
    return len(weights) == 1 and next(iter(weights)) > 0


def check_theorems(met: Met) -> list[Violation]:
    """Evaluate every applicable split-quality relation on the tree.

    Uniform-only relations are skipped on variable-weight trees. Violations
    are returned as data; a conforming tree yields an empty list. Since the
    relations are provable facts, any violation indicates an implementation
    bug rather than a property of the tree.
    """
    out: list[Violation] = []
    area = sea(met)
    if met.root is None or not area:
        return out
    metrics = compute_metrics(met)
    w = {n: metrics[n].w for n in met.nodes}
    up = {n: metrics[n].up for n in area}
    down = {n: metrics[n].down for n in area}
    gap = {n: abs(down[n] - up[n]) for n in area}
    root_w = w[met.root]
    wi = {n: met.nodes[n].wi for n in met.nodes}
    parents = parent_map(met)
    ordered = sorted(area)

    def better(a: NodeId, b: NodeId) -> bool:
        return approx_lt(gap[a], gap[b])

    def equiv(a: NodeId, b: NodeId) -> bool:
        return approx_eq(gap[a], gap[b])

    def record(predicate: str, nodes: tuple[NodeId, ...], detail: str) -> None:
        out.append(Violation(predicate, nodes, detail))

    if _is_uniform(met):
        wi_root = wi[met.root]
        best_gap = min(gap.values())
        for i, n1 in enumerate(ordered):
            # Perfect split membership: up == down puts the node in the
            # brute-force optimal set.
            if approx_eq(up[n1], down[n1]) and not approx_eq(gap[n1], best_gap):
                record("perfect-split-optimal", (n1,),
                       f"up==down=={up[n1]} yet gap {gap[n1]} > min {best_gap}")
            for n2 in ordered:
                if n1 == n2:
                    continue
                # Product rule: a larger up*down product means a better split.
                lhs = better(n1, n2)
                rhs = approx_gt(up[n1] * down[n1], up[n2] * down[n2])
                if lhs != rhs:
                    record("updown-product", (n1, n2),
                           f"better={lhs} but product comparison={rhs}")
                if approx_gt(w[n1], w[n2]):
                    # Heavier-vs-lighter rule and its equality form.
                    cmp_rhs = w[n1] + w[n2] - wi_root
                    if better(n1, n2) != approx_gt(root_w, cmp_rhs):
                        record("weight-sum-strict", (n1, n2),
                               f"better={better(n1, n2)} but {root_w} vs {cmp_rhs}")
                    if equiv(n1, n2) != approx_eq(root_w, cmp_rhs):
                        record("weight-sum-equal", (n1, n2),
                               f"equiv={equiv(n1, n2)} but {root_w} vs {cmp_rhs}")
                if approx_eq(w[n1], w[n2]) and not equiv(n1, n2):
                    record("equal-weight-equivalent", (n1, n2),
                           f"w={w[n1]} both, gaps {gap[n1]} vs {gap[n2]}")

    # Variable-weight relations hold for any non-negative weights.
    for n in ordered:
        # A subtree holds the majority of the search area exactly when its
        # discounted weight exceeds half the total.
        lhs = approx_gt(down[n], up[n])
        rhs = approx_gt(w[n] - wi[n] / 2, root_w / 2)
        if lhs != rhs:
            record("majority-below", (n,),
                   f"down>{'up' if lhs else ''} mismatch: down={down[n]} up={up[n]} "
                   f"w={w[n]} wi={wi[n]} root={root_w}")

    for child, parent in parents.items():
        if child not in area or parent not in area:
            continue
        if approx_ge(down[child], up[child]) and better(parent, child):
            record("child-majority-dominates", (child, parent),
                   f"child gap {gap[child]} worse than parent {gap[parent]}")
        if approx_le(down[parent], up[parent]) and better(child, parent):
            record("parent-minority-dominates", (parent, child),
                   f"parent gap {gap[parent]} worse than child {gap[child]}")

    for p in met.nodes:
        kids = [c for c in met.nodes[p].children if c in area]
        for a in kids:
            for b in kids:
                if a == b:
                    continue
                if approx_ge(down[a], up[a]):
                    # At most one sibling subtree can hold the majority.
                    if approx_gt(down[b], up[b]):
                        record("sibling-majority-unique", (a, b),
                               f"both siblings majority: ({down[a]},{up[a]}) ({down[b]},{up[b]})")
                    # ... and that sibling is never the worse pick.
                    if better(b, a):
                        record("majority-sibling-best", (a, b),
                               f"majority sibling gap {gap[a]} > {gap[b]}")
                if approx_ge(w[a], w[b]) and approx_le(down[a], up[a]):
                    if approx_gt(down[b], up[b]):
                        record("sibling-minority-order", (a, b),
                               f"lighter sibling in majority: ({down[b]},{up[b]})")
                if approx_le(down[a], up[a]) and approx_le(down[b], up[b]):
                    lhs = better(a, b) or equiv(a, b)
                    rhs = approx_ge(w[a] - wi[a] / 2, w[b] - wi[b] / 2)
                    if lhs != rhs:
                        record("sibling-discounted-order", (a, b),
                               f"(gap {gap[a]} vs {gap[b]}) != (score "
                               f"{w[a] - wi[a] / 2} vs {w[b] - wi[b] / 2})")
    return out
