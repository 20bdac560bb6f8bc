"""Marked execution tree: the core state of an algorithmic debugging session.

Every node records one subcomputation ("did this call produce this result?").
The marking tracks what the oracle has established so far: the root may be
Wrong, every other node is Undefined. Correct nodes never appear at all,
because answering Correct drops the answered subtree, while answering Wrong
makes the answered node the new root. Debugging ends when no Undefined node
is left; the last Wrong node is the buggy one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Iterable, Iterator, Mapping

NodeId = int

# Weights may be decimal, so derived quantities carry float rounding.
# Integer-weight trees still compare exactly under these tolerances.
REL_TOL = 1e-9
ABS_TOL = 1e-12


def approx_eq(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=ABS_TOL)


def approx_lt(a: float, b: float) -> bool:
    return a < b and not approx_eq(a, b)


def approx_gt(a: float, b: float) -> bool:
    return a > b and not approx_eq(a, b)


def approx_le(a: float, b: float) -> bool:
    return a <= b or approx_eq(a, b)


def approx_ge(a: float, b: float) -> bool:
    return a >= b or approx_eq(a, b)


class MetError(ValueError):
    """Structurally invalid tree or misuse of a tree operation."""


class UnknownNodeError(MetError):
    """Node id not present in the tree."""


class NotInSearchAreaError(MetError):
    """Operation requires an Undefined node."""


class Marking(Enum):
    WRONG = "wrong"
    UNDEFINED = "undefined"


class Answer(Enum):
    CORRECT = "correct"
    WRONG = "wrong"


class Ordering(Enum):
    """How two candidate question nodes compare at splitting the search area."""

    BETTER = "better"
    EQUIVALENT = "equivalent"
    WORSE = "worse"


@dataclass(frozen=True)
class MetNode:
    """One askable subcomputation. ``wi`` approximates its chance of being
    buggy; zero means "cannot contain the bug"."""

    id: NodeId
    label: str
    wi: float = 1.0
    children: tuple[NodeId, ...] = ()


@dataclass(frozen=True)
class NodeMetrics:
    """Derived per-node quantities for the current tree.

    ``w``    weight of the node's subtree (Undefined nodes only).
    ``down`` total weight of Undefined strict descendants.
    ``up``   total weight of Undefined nodes that are neither the node
             nor one of its descendants.
    """

    w: float
    up: float
    down: float


@dataclass(frozen=True)
class Met:
    """A marked execution tree. Treat as immutable: every answer produces a
    fresh value, so sessions can share read-only trees freely."""

    nodes: Mapping[NodeId, MetNode]
    root: NodeId | None
    marking: Mapping[NodeId, Marking]
    name: str = "met"

    @property
    def is_empty(self) -> bool:
        return self.root is None

    def node(self, n: NodeId) -> MetNode:
        try:
            return self.nodes[n]
        except KeyError:
            raise UnknownNodeError(f"unknown node id {n}") from None


def empty_met(name: str = "met") -> Met:
    """The all-answered terminal state."""
    return Met(nodes={}, root=None, marking={}, name=name)


def make_met(
    nodes: Iterable[MetNode],
    root: NodeId,
    root_marked_wrong: bool = False,
    name: str = "met",
) -> Met:
    """Validate and assemble a tree from nodes and a root id.

    Raises MetError naming the first violation found: duplicate id, dangling
    child reference, missing root, multiple parents, cycle, unreachable
    node, or negative weight.
    """
    by_id: dict[NodeId, MetNode] = {}
    for node in nodes:
        if node.id < 0:
            raise MetError(f"negative node id {node.id}")
        if node.id in by_id:
            raise MetError(f"duplicate id {node.id}")
        by_id[node.id] = node

    if root not in by_id:
        raise MetError(f"missing root {root}")

    parents: dict[NodeId, NodeId] = {}
    for node in by_id.values():
        if node.wi < 0:
            raise MetError(f"negative weight {node.wi} on node {node.id}")
        seen: set[NodeId] = set()
        for child in node.children:
            if child not in by_id:
                raise MetError(f"dangling child reference {child} in node {node.id}")
            if child in seen:
                raise MetError(f"duplicate child {child} in node {node.id}")
            seen.add(child)
            if child == root:
                raise MetError(f"cycle: root {root} appears as a child of node {node.id}")
            if child in parents:
                raise MetError(f"node {child} has multiple parents ({parents[child]} and {node.id})")
            parents[child] = node.id

    reached = set(_preorder(by_id, root))
    if len(reached) != len(by_id):
        stranded = sorted(set(by_id) - reached)
        raise MetError(f"cycle or disconnected subtree: unreachable node(s) {stranded}")

    marking = {n: Marking.UNDEFINED for n in by_id}
    if root_marked_wrong:
        marking[root] = Marking.WRONG
    return Met(nodes=by_id, root=root, marking=marking, name=name)


def _preorder(nodes: Mapping[NodeId, MetNode], start: NodeId) -> list[NodeId]:
    order: list[NodeId] = []
    stack = [start]
    while stack:
        n = stack.pop()
        order.append(n)
        stack.extend(reversed(nodes[n].children))
    return order


def subtree_ids(met: Met, n: NodeId) -> list[NodeId]:
    """Ids of n and all its descendants, preorder."""
    met.node(n)
    return _preorder(met.nodes, n)


def parent_map(met: Met) -> dict[NodeId, NodeId]:
    return {
        child: node.id for node in met.nodes.values() for child in node.children
    }


def postorder(met: Met) -> Iterator[NodeId]:
    """Children before parents, siblings in declaration order."""
    if met.root is None:
        return
    for n in reversed(_reverse_postorder(met)):
        yield n


def _reverse_postorder(met: Met) -> list[NodeId]:
    # Preorder with reversed child order; reversing it yields postorder.
    order: list[NodeId] = []
    stack = [met.root]
    while stack:
        n = stack.pop()
        order.append(n)
        stack.extend(met.nodes[n].children)
    return order


def sea(met: Met) -> set[NodeId]:
    """The search area: all Undefined nodes, i.e. everything still worth asking."""
    return {n for n, m in met.marking.items() if m is Marking.UNDEFINED}


def compute_metrics(met: Met) -> dict[NodeId, NodeMetrics]:
    """Weight, up and down for every node in one bottom-up pass.

    A node's weight sums the individual weights of the Undefined nodes in
    its subtree; a Wrong root contributes nothing to its own weight. For
    the Wrong root, up/down are reported as (0, w_root).
    """
    if met.root is None:
        return {}
    order = _preorder(met.nodes, met.root)
    w: dict[NodeId, float] = {}
    for n in reversed(order):
        node = met.nodes[n]
        total = sum(w[c] for c in node.children)
        if met.marking[n] is Marking.UNDEFINED:
            total += node.wi
        w[n] = total
    root_w = w[met.root]
    metrics: dict[NodeId, NodeMetrics] = {}
    for n in order:
        if met.marking[n] is Marking.UNDEFINED:
            down = w[n] - met.nodes[n].wi
            up = root_w - w[n]
        else:
            down = w[n]
            up = root_w - w[n]
        metrics[n] = NodeMetrics(w=w[n], up=up, down=down)
    return metrics


def weight(met: Met, n: NodeId) -> float:
    """Subtree weight of n in the current tree (Undefined nodes only)."""
    return sum(
        met.nodes[i].wi
        for i in subtree_ids(met, n)
        if met.marking[i] is Marking.UNDEFINED
    )


def legacy_weight(met: Met, n: NodeId) -> int:
    """Plain descendant count including n itself, regardless of marking.

    This is the halving measure the classic strategies use; it knowingly
    counts the Wrong root as askable mass.
    """
    return len(subtree_ids(met, n))


def legacy_weights(met: Met) -> dict[NodeId, int]:
    """Descendant counts for every node in one pass."""
    if met.root is None:
        return {}
    counts: dict[NodeId, int] = {}
    for n in reversed(_preorder(met.nodes, met.root)):
        counts[n] = 1 + sum(counts[c] for c in met.nodes[n].children)
    return counts


def up_down(met: Met, n: NodeId) -> tuple[float, float]:
    """(up, down) for an Undefined node: the weight still in play outside
    versus strictly inside its subtree. The node's own weight belongs to
    neither side, since answering it settles it either way."""
    met.node(n)
    if met.marking[n] is not Marking.UNDEFINED:
        raise NotInSearchAreaError(f"node {n} is not Undefined")
    m = compute_metrics(met)[n]
    return (m.up, m.down)


def divides_better(met: Met, n1: NodeId, n2: NodeId) -> Ordering:
    """Compare two Undefined nodes by |down - up|: smaller is Better."""
    u1, d1 = up_down(met, n1)
    u2, d2 = up_down(met, n2)
    g1 = abs(d1 - u1)
    g2 = abs(d2 - u2)
    if approx_eq(g1, g2):
        return Ordering.EQUIVALENT
    return Ordering.BETTER if g1 < g2 else Ordering.WORSE


def apply_answer(met: Met, n: NodeId, answer: Answer) -> Met:
    """Produce the tree that results from answering node n.

    Correct removes n's whole subtree (the empty tree if n is the root);
    Wrong keeps only n's subtree with n as the new, Wrong-marked root.
    Surviving nodes keep their ids.
    """
    met.node(n)
    if met.marking[n] is not Marking.UNDEFINED:
        raise NotInSearchAreaError(f"node {n} is not Undefined and cannot be answered")

    in_subtree = set(subtree_ids(met, n))
    if answer is Answer.WRONG:
        nodes = {i: met.nodes[i] for i in in_subtree}
        marking = {i: Marking.UNDEFINED for i in in_subtree}
        marking[n] = Marking.WRONG
        return Met(nodes=nodes, root=n, marking=marking, name=met.name)

    if n == met.root:
        return empty_met(met.name)
    parent = parent_map(met)[n]
    nodes = {i: node for i, node in met.nodes.items() if i not in in_subtree}
    pnode = nodes[parent]
    nodes[parent] = replace(pnode, children=tuple(c for c in pnode.children if c != n))
    marking = {i: m for i, m in met.marking.items() if i not in in_subtree}
    return Met(nodes=nodes, root=met.root, marking=marking, name=met.name)
