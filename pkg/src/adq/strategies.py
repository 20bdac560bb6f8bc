"""Question-selection strategies over a marked execution tree.

Two families live here. The legacy halving rules (dqs, dqh) pick the
Undefined node whose plain descendant count is closest to half the tree;
they deliberately keep the classic behavior of counting the Wrong root as
askable mass. The optimal family (dqo and variants) instead balances the
Undefined weight outside versus inside the candidate's subtree, walking a
single heaviest-child path from the root so only one final comparison is
needed. Three simple baselines round out the roster for benchmarking.

All ties break toward the lowest node id so that every strategy is a pure
function of the tree.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .met import (
    Marking,
    Met,
    NodeId,
    approx_eq,
    approx_ge,
    approx_gt,
    compute_metrics,
    legacy_weights,
    postorder,
    sea,
)


class PreconditionError(ValueError):
    """The tree violates a strategy's applicability requirements."""


class StrategyId(Enum):
    """Every selectable strategy; values double as the CLI/service tokens."""

    DQS = "dqs"
    DQH = "dqh"
    DQO = "dqo"
    DQO_COMPLETE = "dqo-complete"
    DQO_GENERAL = "dqo-general"
    DQO_GENERAL_COMPLETE = "dqo-general-complete"
    TOP_DOWN = "td"
    HEAVIEST_FIRST = "hf"
    SINGLE_STEPPING = "ss"


def strategy_from_token(token: str) -> StrategyId:
    for sid in StrategyId:
        if sid.value == token:
            return sid
    raise ValueError(f"unknown strategy {token!r}; expected one of "
                     f"{', '.join(s.value for s in StrategyId)}")


@dataclass(frozen=True)
class Selection:
    """A chosen question node, plus the full set of equally good picks when
    the strategy is a complete variant."""

    chosen: NodeId
    alternatives: frozenset[NodeId] | None = None


def _require_sea(met: Met) -> set[NodeId]:
    area = sea(met)
    if not area:
        raise PreconditionError("empty search area: nothing left to ask")
    return area


def _require_uniform(met: Met) -> None:
    nodes = list(met.nodes.values())
    first = nodes[0]
    for node in nodes[1:]:
        if node.wi != first.wi:
            raise PreconditionError(
                f"requires uniform weights: nodes {first.id} and {node.id} "
                f"differ ({first.wi} vs {node.wi})"
            )
    if first.wi <= 0:
        raise PreconditionError("requires a strictly positive uniform weight")


def _require_nonnegative(met: Met) -> None:
    for node in met.nodes.values():
        if node.wi < 0:
            raise PreconditionError(f"negative weight {node.wi} on node {node.id}")


def _require_positive(met: Met) -> None:
    for node in met.nodes.values():
        if node.wi <= 0:
            raise PreconditionError(
                f"complete variant requires strictly positive weights "
                f"(node {node.id} has wi={node.wi})"
            )


# --- legacy halving rules -------------------------------------------------

def select_shapiro(met: Met) -> Selection:
    """Heaviest Undefined node whose descendant count is at most half the
    tree; the lightest node overall when nothing fits under the half."""
    area = _require_sea(met)
    lw = legacy_weights(met)
    half = lw[met.root] / 2
    under = [n for n in area if lw[n] <= half]
    if under:
        return Selection(min(under, key=lambda n: (-lw[n], n)))
    return Selection(min(area, key=lambda n: (lw[n], n)))


def select_hirunkitti(met: Met) -> Selection:
    """Closer-to-half of the two legacy candidates: the heaviest node at or
    under half versus the lightest node at or over half."""
    area = _require_sea(met)
    lw = legacy_weights(met)
    half = lw[met.root] / 2
    under = [n for n in area if lw[n] <= half]
    over = [n for n in area if lw[n] >= half]
    lo = min(under, key=lambda n: (-lw[n], n)) if under else None
    hi = min(over, key=lambda n: (lw[n], n)) if over else None
    if lo is None:
        assert hi is not None
        return Selection(hi)
    if hi is None:
        return Selection(lo)
    d_lo = half - lw[lo]
    d_hi = lw[hi] - half
    if d_lo < d_hi:
        return Selection(lo)
    if d_hi < d_lo:
        return Selection(hi)
    return Selection(min(lo, hi))


# --- optimal weight-splitting family ---------------------------------------

def _descend(met: Met, w: dict[NodeId, float], halved: bool):
    """Walk the heaviest-child path from the root until the candidate's
    mass no longer exceeds half the tree. Returns (best, candidate,
    children-of-best); candidate is None when best is childless."""
    root = met.root
    half = w[root] / 2
    candidate = root
    while True:
        best = candidate
        children = met.nodes[best].children
        if not children:
            return best, None, children
        candidate = min(children, key=lambda c: (-w[c], c))
        crit = w[candidate] - met.nodes[candidate].wi / 2 if halved else w[candidate]
        if not approx_gt(crit, half):
            return best, candidate, children


def select_dqo(met: Met) -> Selection:
    """Optimal pick for uniform trees: one comparison at the end of the
    heaviest-child path decides between the last node above half and its
    heaviest child."""
    _require_uniform(met)
    _require_sea(met)
    w = {n: m.w for n, m in compute_metrics(met).items()}
    best, candidate, _children = _descend(met, w, halved=False)
    if candidate is None:
        return Selection(best)
    if met.marking[best] is Marking.WRONG:
        return Selection(candidate)
    wi_root = met.nodes[met.root].wi
    if approx_ge(w[met.root], w[best] + w[candidate] - wi_root):
        return Selection(best)
    return Selection(candidate)


def select_dqo_complete(met: Met) -> Selection:
    """Like select_dqo but returns every equally good pick reachable on the
    path: the final node, its maximal children, or both on an exact tie."""
    _require_uniform(met)
    _require_sea(met)
    w = {n: m.w for n, m in compute_metrics(met).items()}
    best, candidate, children = _descend(met, w, halved=False)
    if candidate is None:
        return _as_set({best})
    cands = {c for c in children if approx_eq(w[c], w[candidate])}
    if met.marking[best] is Marking.WRONG:
        return _as_set(cands)
    rhs = w[best] + w[candidate] - met.nodes[met.root].wi
    if approx_gt(w[met.root], rhs):
        return _as_set({best})
    if approx_eq(w[met.root], rhs):
        return _as_set({best} | cands)
    return _as_set(cands)


def select_dqo_general(met: Met) -> Selection:
    """Optimal pick for arbitrary non-negative weights. The walk discounts
    half of the candidate's own weight (a node is settled, not halved, by
    its own answer) and the final comparison discounts both sides."""
    _require_nonnegative(met)
    _require_sea(met)
    w = {n: m.w for n, m in compute_metrics(met).items()}
    best, candidate, children = _descend(met, w, halved=True)
    if candidate is None:
        return Selection(best)
    candidate = min(children, key=lambda c: (-(w[c] - met.nodes[c].wi / 2), c))
    if met.marking[best] is Marking.WRONG:
        return Selection(candidate)
    rhs = (
        w[best] + w[candidate]
        - met.nodes[best].wi / 2 - met.nodes[candidate].wi / 2
    )
    if approx_ge(w[met.root], rhs):
        return Selection(best)
    return Selection(candidate)


def select_dqo_general_complete(met: Met) -> Selection:
    """Complete variant of select_dqo_general; requires strictly positive
    weights, since zero-weight nodes make the full optimal set unreachable
    from a single root path."""
    _require_positive(met)
    _require_sea(met)
    w = {n: m.w for n, m in compute_metrics(met).items()}
    best, candidate, children = _descend(met, w, halved=True)
    if candidate is None:
        return _as_set({best})
    score = {c: w[c] - met.nodes[c].wi / 2 for c in children}
    top = max(score.values())
    cands = {c for c in children if approx_eq(score[c], top)}
    candidate = min(cands)
    if met.marking[best] is Marking.WRONG:
        return _as_set(cands)
    rhs = (
        w[best] + w[candidate]
        - met.nodes[best].wi / 2 - met.nodes[candidate].wi / 2
    )
    if approx_gt(w[met.root], rhs):
        return _as_set({best})
    if approx_eq(w[met.root], rhs):
        return _as_set({best} | cands)
    return _as_set(cands)


def _as_set(ids: set[NodeId]) -> Selection:
    return Selection(chosen=min(ids), alternatives=frozenset(ids))


# --- baselines --------------------------------------------------------------

def select_top_down(met: Met) -> Selection:
    """Leftmost Undefined child of the root (the root itself once childless)."""
    _require_sea(met)
    for c in met.nodes[met.root].children:
        if met.marking[c] is Marking.UNDEFINED:
            return Selection(c)
    return Selection(met.root)


def select_heaviest_first(met: Met) -> Selection:
    """Like top-down but prefers the child with the largest subtree weight."""
    _require_sea(met)
    w = {n: m.w for n, m in compute_metrics(met).items()}
    children = [c for c in met.nodes[met.root].children if met.marking[c] is Marking.UNDEFINED]
    if children:
        return Selection(min(children, key=lambda c: (-w[c], c)))
    return Selection(met.root)


def select_single_stepping(met: Met) -> Selection:
    """First Undefined node in postorder: bottom-up, one call at a time."""
    _require_sea(met)
    for n in postorder(met):
        if met.marking[n] is Marking.UNDEFINED:
            return Selection(n)
    raise AssertionError("unreachable: search area was non-empty")


_SELECTORS: dict[StrategyId, Callable[[Met], Selection]] = {
    StrategyId.DQS: select_shapiro,
    StrategyId.DQH: select_hirunkitti,
    StrategyId.DQO: select_dqo,
    StrategyId.DQO_COMPLETE: select_dqo_complete,
    StrategyId.DQO_GENERAL: select_dqo_general,
    StrategyId.DQO_GENERAL_COMPLETE: select_dqo_general_complete,
    StrategyId.TOP_DOWN: select_top_down,
    StrategyId.HEAVIEST_FIRST: select_heaviest_first,
    StrategyId.SINGLE_STEPPING: select_single_stepping,
}


def select_node(met: Met, strategy: StrategyId) -> Selection:
    return _SELECTORS[strategy](met)


def applicability_error(met: Met, strategy: StrategyId) -> str | None:
    """Why the strategy cannot run on this tree, or None if it can."""
    try:
        if strategy in (StrategyId.DQO, StrategyId.DQO_COMPLETE):
            _require_uniform(met)
        elif strategy is StrategyId.DQO_GENERAL:
            _require_nonnegative(met)
        elif strategy is StrategyId.DQO_GENERAL_COMPLETE:
            _require_positive(met)
    except PreconditionError as exc:
        return str(exc)
    return None
