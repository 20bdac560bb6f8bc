"""Strategy-comparison harness: replay every bug placement on every tree
with every strategy, and report exact average question counts as CSV.

Strategies whose weight preconditions a tree violates are skipped and the
skip is recorded; any other failure is a genuine error and propagates.
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .analysis import expected_questions
from .met import Met
from .strategies import StrategyId, applicability_error

CSV_HEADER = "benchmark,nodes,strategy,scenarios,avg_questions,avg_pct,num/den"


@dataclass(frozen=True)
class BenchRow:
    benchmark: str
    nodes: int
    strategy: StrategyId
    scenarios: int
    avg_questions: Fraction

    @property
    def avg_pct(self) -> Fraction:
        return 100 * self.avg_questions / self.nodes


@dataclass(frozen=True)
class BenchSkip:
    benchmark: str
    strategy: StrategyId
    reason: str


def run_bench(
    corpus: Sequence[Met],
    strategies: Iterable[StrategyId],
    include_nobug: bool = True,
) -> tuple[list[BenchRow], list[BenchSkip]]:
    if not corpus:
        raise ValueError("empty corpus")
    rows: list[BenchRow] = []
    skips: list[BenchSkip] = []
    for met in corpus:
        for strategy in strategies:
            reason = applicability_error(met, strategy)
            if reason is not None:
                skips.append(BenchSkip(met.name, strategy, reason))
                continue
            cost = expected_questions(met, strategy, include_nobug=include_nobug)
            rows.append(
                BenchRow(
                    benchmark=met.name,
                    nodes=len(met.nodes),
                    strategy=strategy,
                    scenarios=cost.scenarios,
                    avg_questions=cost.value,
                )
            )
    return rows, skips


def rows_to_csv(rows: Iterable[BenchRow]) -> str:
    out = io.StringIO()
    out.write(CSV_HEADER + "\n")
    for row in rows:
        avg = row.avg_questions
        out.write(
            f"{row.benchmark},{row.nodes},{row.strategy.value},{row.scenarios},"
            f"{float(avg):.2f},{float(row.avg_pct):.2f},"
            f"{avg.numerator}/{avg.denominator}\n"
        )
    return out.getvalue()


def corpus_mean(rows: Iterable[BenchRow], strategy: StrategyId) -> Fraction:
    """Exact mean of the per-tree average question counts for one strategy."""
    values = [row.avg_questions for row in rows if row.strategy is strategy]
    if not values:
        raise ValueError(f"no rows for strategy {strategy.value}")
    return sum(values, Fraction(0)) / len(values)
