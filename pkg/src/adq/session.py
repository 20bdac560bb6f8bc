"""The debugging loop: select a node, ask the oracle, shrink the tree.

A session repeatedly asks whichever node the strategy picks until no
Undefined node remains. The buggy node is the last one answered Wrong (or
the pre-marked Wrong root when every question came back Correct). Oracles
are pluggable: a simulator with a planted bug, a fixed answer script, or a
callback for a live human.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Protocol

from .met import Answer, Marking, Met, MetNode, NodeId, apply_answer, parent_map, sea
from .strategies import StrategyId, select_node


class SessionError(RuntimeError):
    """Session misuse: no question pending, bad forced pick, and the like."""


class ScriptExhaustedError(SessionError):
    """A scripted oracle ran out of answers before the session finished."""


class Oracle(Protocol):
    def ask(self, node: MetNode) -> Answer: ...


@dataclass(frozen=True)
class SimulatedOracle:
    """Answers as if a specific node were buggy: every ancestor-or-self of
    the planted node computes a wrong result, everything else is correct.
    An empty set simulates a bug-free run."""

    wrong_ids: frozenset[NodeId]

    def ask(self, node: MetNode) -> Answer:
        return Answer.WRONG if node.id in self.wrong_ids else Answer.CORRECT


def simulated_oracle(met: Met, buggy: NodeId | None) -> SimulatedOracle:
    if buggy is None:
        return SimulatedOracle(frozenset())
    if buggy not in met.nodes:
        raise SessionError(f"planted bug {buggy} is not a node of the tree")
    parents = parent_map(met)
    chain = {buggy}
    n = buggy
    while n in parents:
        n = parents[n]
        chain.add(n)
    return SimulatedOracle(frozenset(chain))


@dataclass
class ScriptedOracle:
    answers: tuple[Answer, ...]
    _next: int = 0

    def ask(self, node: MetNode) -> Answer:
        if self._next >= len(self.answers):
            raise ScriptExhaustedError(
                f"script exhausted after {len(self.answers)} answers; "
                f"no answer left for node {node.id} ({node.label!r})"
            )
        answer = self.answers[self._next]
        self._next += 1
        return answer


@dataclass(frozen=True)
class CallbackOracle:
    fn: Callable[[MetNode], Answer]

    def ask(self, node: MetNode) -> Answer:
        return self.fn(node)


@dataclass(frozen=True)
class SessionReport:
    buggy: NodeId | None
    buggy_label: str | None
    questions: int
    transcript: tuple[tuple[NodeId, Answer], ...]


@dataclass(frozen=True)
class SessionState:
    """One step of an in-progress session. Advancing returns a new state;
    a state with a report is finished and cannot be stepped further."""

    initial: Met
    current: Met
    strategy: StrategyId
    pending: NodeId | None
    transcript: tuple[tuple[NodeId, Answer], ...] = ()
    report: SessionReport | None = None

    @property
    def finished(self) -> bool:
        return self.report is not None

    def pending_node(self) -> MetNode:
        if self.pending is None:
            raise SessionError("session is finished; no question pending")
        return self.current.nodes[self.pending]


def start_session(
    met: Met, strategy: StrategyId, first_pick: NodeId | None = None
) -> SessionState:
    """Open a session on the tree; the first question is the strategy's
    pick, or ``first_pick`` when a fixed opening move is wanted."""
    if not sea(met):
        raise SessionError("nothing to debug: no Undefined node in the tree")
    if first_pick is not None:
        if first_pick not in sea(met):
            raise SessionError(f"forced first pick {first_pick} is not Undefined")
        pending = first_pick
    else:
        pending = select_node(met, strategy).chosen
    return SessionState(initial=met, current=met, strategy=strategy, pending=pending)


def step_session(state: SessionState, answer: Answer) -> SessionState:
    """Apply the answer to the pending node and select the next question,
    or finish with a report once the search area is empty."""
    if state.finished:
        raise SessionError("session already finished")
    node = state.pending
    assert node is not None
    transcript = state.transcript + ((node, answer),)
    current = apply_answer(state.current, node, answer)
    if sea(current):
        pending = select_node(current, state.strategy).chosen
        return SessionState(
            initial=state.initial,
            current=current,
            strategy=state.strategy,
            pending=pending,
            transcript=transcript,
        )
    return SessionState(
        initial=state.initial,
        current=current,
        strategy=state.strategy,
        pending=None,
        transcript=transcript,
        report=_final_report(state.initial, transcript),
    )


def _final_report(initial: Met, transcript: tuple[tuple[NodeId, Answer], ...]) -> SessionReport:
    buggy: NodeId | None = None
    for node, answer in transcript:
        if answer is Answer.WRONG:
            buggy = node
    if buggy is None and initial.root is not None:
        if initial.marking[initial.root] is Marking.WRONG:
            buggy = initial.root
    label = initial.nodes[buggy].label if buggy is not None else None
    return SessionReport(
        buggy=buggy,
        buggy_label=label,
        questions=len(transcript),
        transcript=transcript,
    )


def run_session(
    met: Met,
    strategy: StrategyId,
    oracle: Oracle,
    first_pick: NodeId | None = None,
) -> SessionReport:
    """Drive a session to completion against the oracle."""
    state = start_session(met, strategy, first_pick=first_pick)
    while not state.finished:
        answer = oracle.ask(state.pending_node())
        state = step_session(state, answer)
    assert state.report is not None
    return state.report
