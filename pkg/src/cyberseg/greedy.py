"""Chunked greedy heuristic: repeated small exact solves instead of one big one.

The exact search cost explodes with the budget, so the heuristic spends the
budget in chunks of ``chunk_x`` devices: solve exactly for the best cut of
size at most ``chunk_x`` on the current residual network, apply it, repeat,
and finish with whatever budget is left.  Larger chunks cost more time and
tend to find better cuts.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field, replace

from .exact import Solution, SolveConfig, SolveStatus, solve_direct
from .graph import (
    AttackSet,
    Graph,
    ScoreReport,
    _require_attacked_in_graph,
    remove_devices,
    score,
)


def _default_inner() -> SolveConfig:
    return SolveConfig(budget_k=0)


@dataclass(frozen=True)
class GreedyConfig:
    """Total budget, chunk size, and a template for the inner exact solves."""

    budget_k: int
    chunk_x: int = 3
    inner: SolveConfig = field(default_factory=_default_inner)

    def __post_init__(self) -> None:
        if self.budget_k < 0:
            raise ValueError("budget_k must be non-negative")
        if self.chunk_x < 1:
            raise ValueError("chunk_x must be at least 1")


@dataclass(frozen=True)
class GreedySolution(Solution):
    """Solution plus the per-chunk trace of the greedy run."""

    chunk_budgets: tuple[int, ...] = ()
    chunk_chosen: tuple[tuple[int, ...], ...] = ()
    chunk_reports: tuple[ScoreReport, ...] = ()


def chunk_schedule(budget_k: int, chunk_x: int) -> tuple[int, ...]:
    """Inner budgets the greedy loop issues, e.g. (10, 3) -> (3, 3, 3, 1)."""
    if budget_k < 0:
        raise ValueError("budget_k must be non-negative")
    if chunk_x < 1:
        raise ValueError("chunk_x must be at least 1")
    budgets: list[int] = []
    remaining = budget_k
    while chunk_x < remaining:
        budgets.append(chunk_x)
        remaining -= chunk_x
    budgets.append(remaining)
    return tuple(budgets)


def solve_greedy(g: Graph, a: AttackSet, config: GreedyConfig) -> GreedySolution:
    """Spend the budget chunk by chunk with exact subsolves on the residual network.

    The final report is scored with the original network's device count as
    multiplier base, so greedy results compare directly against exact ones.
    Stops early once a chunk's best move is "cut nothing" with zero
    vulnerable pairs left: further removals can only lose healthy pairs.
    """
    _require_attacked_in_graph(g, a)
    start = time.perf_counter()

    residual = g
    chosen: set[int] = set()
    evaluated = 0
    status = SolveStatus.OPTIMAL
    budgets: list[int] = []
    traces_chosen: list[tuple[int, ...]] = []
    traces_reports: list[ScoreReport] = []

    for budget in chunk_schedule(config.budget_k, config.chunk_x):
        sub = solve_direct(
            residual,
            AttackSet(a.attacked & residual.device_ids),
            replace(config.inner, budget_k=budget),
        )
        budgets.append(budget)
        evaluated += sub.subsets_evaluated
        traces_chosen.append(tuple(sorted(sub.chosen)))
        traces_reports.append(sub.report)
        if sub.status is not SolveStatus.OPTIMAL:
            status = SolveStatus.TIMEOUT_BEST_EFFORT
        if not sub.chosen and sub.report.vulnerability == 0:
            break
        chosen |= sub.chosen
        residual = remove_devices(residual, sub.chosen)

    report = score(
        remove_devices(g, chosen),
        AttackSet(a.attacked - chosen),
        multiplier_base=g.device_count,
    )
    return GreedySolution(
        chosen=frozenset(chosen),
        report=report,
        status=status,
        subsets_evaluated=evaluated,
        elapsed_seconds=time.perf_counter() - start,
        chunk_budgets=tuple(budgets),
        chunk_chosen=tuple(traces_chosen),
        chunk_reports=tuple(traces_reports),
    )
