"""Execution-tree file format and seeded random tree generation.

The interchange format is a single JSON object::

    {"name": str, "root": int, "root_marked_wrong": bool?,
     "nodes": [{"id": int, "label": str, "weight": number?, "children": [int]}]}

Unknown fields are ignored, ids are non-negative integers and the weight
defaults to 1.0. Fixture files shipped with the package live in
``adq/fixtures`` and are listed by :func:`fixture_names`.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .met import Marking, Met, MetError, MetNode, make_met


class FormatError(ValueError):
    """Document does not conform to the execution-tree schema."""


def met_from_document(doc: object, default_name: str = "met") -> Met:
    """Build a validated tree from an already-decoded JSON object."""
    if not isinstance(doc, dict):
        raise FormatError("document must be a JSON object")
    if "root" not in doc:
        raise FormatError("missing root")
    root = doc["root"]
    if not isinstance(root, int) or isinstance(root, bool) or root < 0:
        raise FormatError(f"root must be a non-negative integer, got {root!r}")
    raw_nodes = doc.get("nodes")
    if not isinstance(raw_nodes, list) or not raw_nodes:
        raise FormatError("nodes must be a non-empty array")

    nodes = []
    for i, raw in enumerate(raw_nodes):
        if not isinstance(raw, dict):
            raise FormatError(f"nodes[{i}] must be an object")
        nid = raw.get("id")
        if not isinstance(nid, int) or isinstance(nid, bool) or nid < 0:
            raise FormatError(f"nodes[{i}].id must be a non-negative integer, got {nid!r}")
        label = raw.get("label", f"n{nid}")
        if not isinstance(label, str):
            raise FormatError(f"nodes[{i}].label must be a string")
        wi = raw.get("weight", 1.0)
        if isinstance(wi, bool) or not isinstance(wi, (int, float)):
            raise FormatError(f"nodes[{i}].weight must be a number, got {wi!r}")
        if wi < 0:
            raise FormatError(f"negative weight {wi} on node {nid}")
        children = raw.get("children", [])
        if not isinstance(children, list) or any(
            not isinstance(c, int) or isinstance(c, bool) or c < 0 for c in children
        ):
            raise FormatError(f"nodes[{i}].children must be an array of non-negative integers")
        nodes.append(MetNode(id=nid, label=label, wi=float(wi), children=tuple(children)))

    name = doc.get("name", default_name)
    if not isinstance(name, str):
        raise FormatError("name must be a string")
    wrong = doc.get("root_marked_wrong", False)
    if not isinstance(wrong, bool):
        raise FormatError("root_marked_wrong must be a boolean")
    try:
        return make_met(nodes, root=root, root_marked_wrong=wrong, name=name)
    except MetError as exc:
        raise FormatError(str(exc)) from None


def parse_et(data: bytes | str) -> Met:
    """Parse and validate an execution-tree document."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise FormatError(f"not valid JSON: {exc}") from None
    return met_from_document(doc)


def met_to_document(met: Met) -> dict:
    if met.is_empty:
        raise FormatError("cannot serialize an empty tree")
    doc: dict = {"name": met.name, "root": met.root}
    if met.marking[met.root] is Marking.WRONG:
        doc["root_marked_wrong"] = True
    doc["nodes"] = [
        {
            "id": node.id,
            "label": node.label,
            "weight": node.wi,
            "children": list(node.children),
        }
        for node in sorted(met.nodes.values(), key=lambda x: x.id)
    ]
    return doc


def serialize_et(met: Met) -> bytes:
    """Inverse of parse_et: ids, labels, weights and markings round-trip."""
    return (json.dumps(met_to_document(met), indent=2) + "\n").encode("utf-8")


def load_et(path: str | Path) -> Met:
    return parse_et(Path(path).read_bytes())


@dataclass(frozen=True)
class GenParams:
    """Knobs for the seeded random tree generator.

    ``weight_range`` of None means every node weighs 1.0; otherwise weights
    are drawn uniformly from [lo, hi]. ``zero_weight_prob`` additionally
    zeroes that fraction of nodes, for trees mixing trusted code in.
    """

    node_count: int
    max_children: int = 4
    weight_range: tuple[float, float] | None = None
    zero_weight_prob: float = 0.0
    seed: int = 0
    root_marked_wrong: bool = False
    name: str = ""

    def validate(self) -> None:
        if self.node_count < 1:
            raise ValueError("node_count must be >= 1")
        if self.max_children < 1:
            raise ValueError("max_children must be >= 1")
        if self.weight_range is not None:
            lo, hi = self.weight_range
            if lo < 0 or hi < lo:
                raise ValueError(f"bad weight range [{lo}, {hi}]")
        if not 0.0 <= self.zero_weight_prob <= 1.0:
            raise ValueError("zero_weight_prob must be in [0, 1]")
        if self.root_marked_wrong and self.node_count < 2:
            raise ValueError("a wrong root needs at least one descendant to ask about")


def gen_random(params: GenParams) -> Met:
    """Deterministic-in-seed random tree with the requested size and weights."""
    params.validate()
    rng = random.Random(params.seed)
    arity: dict[int, int] = {0: 0}
    children: dict[int, list[int]] = {0: []}
    for nid in range(1, params.node_count):
        open_parents = [p for p, k in arity.items() if k < params.max_children]
        parent = rng.choice(open_parents)
        arity[parent] += 1
        arity[nid] = 0
        children[parent].append(nid)
        children[nid] = []

    def draw_weight() -> float:
        if params.zero_weight_prob and rng.random() < params.zero_weight_prob:
            return 0.0
        if params.weight_range is None:
            return 1.0
        lo, hi = params.weight_range
        return rng.uniform(lo, hi)

    nodes = [
        MetNode(id=nid, label=f"n{nid}", wi=draw_weight(), children=tuple(children[nid]))
        for nid in range(params.node_count)
    ]
    name = params.name or f"random-{params.seed}-{params.node_count}"
    return make_met(nodes, root=0, root_marked_wrong=params.root_marked_wrong, name=name)


def fixtures_dir() -> Path:
    return Path(str(resources.files("adq").joinpath("fixtures")))


def fixture_names() -> list[str]:
    return sorted(p.stem for p in fixtures_dir().glob("*.json"))


def load_fixture(name: str) -> Met:
    path = fixtures_dir() / f"{name}.json"
    if not path.exists():
        raise FormatError(f"unknown fixture {name!r}; available: {', '.join(fixture_names())}")
    return load_et(path)
