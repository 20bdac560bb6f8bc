"""Algorithmic debugging with optimal divide-and-query node selection."""

from .analysis import ExpectedCost, check_theorems, expected_questions, optimal_set
from .formats import GenParams, gen_random, load_et, load_fixture, parse_et, serialize_et
from .met import (
    Answer,
    Marking,
    Met,
    MetError,
    MetNode,
    NodeId,
    Ordering,
    apply_answer,
    divides_better,
    legacy_weight,
    make_met,
    sea,
    up_down,
    weight,
)
from .session import (
    ScriptedOracle,
    SessionReport,
    SessionState,
    run_session,
    simulated_oracle,
    start_session,
    step_session,
)
from .strategies import Selection, StrategyId, select_node, strategy_from_token

__all__ = [
    "Answer",
    "ExpectedCost",
    "GenParams",
    "Marking",
    "Met",
    "MetError",
    "MetNode",
    "NodeId",
    "Ordering",
    "ScriptedOracle",
    "Selection",
    "SessionReport",
    "SessionState",
    "StrategyId",
    "apply_answer",
    "check_theorems",
    "divides_better",
    "expected_questions",
    "gen_random",
    "legacy_weight",
    "load_et",
    "load_fixture",
    "make_met",
    "optimal_set",
    "parse_et",
    "run_session",
    "sea",
    "select_node",
    "serialize_et",
    "simulated_oracle",
    "start_session",
    "step_session",
    "strategy_from_token",
    "up_down",
    "weight",
]
