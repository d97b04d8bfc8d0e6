"""Exact isolation solving by pruned subset enumeration.

Enumerates every candidate cut of size at most ``k`` over the eligible
devices, scores each residual network, and returns the global argmin under
a total tie-break order.  Non-attacked degree-one devices can be excluded
from the search up front: cutting such a device never beats cutting its
unique neighbor instead, so some optimal cut avoids them.
"""

from __future__ import annotations

import time
from collections.abc import Iterable, Iterator
from concurrent.futures import FIRST_COMPLETED, ProcessPoolExecutor, wait
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, islice
from typing import Optional

from .graph import (
    AttackSet,
    Graph,
    ScoreReport,
    _require_attacked_in_graph,
    remove_devices,
    residual_pair_counts,
    score,
    score_bruteforce,
)

# Deadline checks and parallel work units are granular at this many candidates.
_CHUNK = 64
_PARALLEL_CHUNK = 2048


class ObjectiveMode(Enum):
    """What the solver minimizes."""

    SNPV = "snpv"  # lexicographic: vulnerability first, then healthiness
    CNPV = "cnpv"  # vulnerability only


class SolveStatus(Enum):
    OPTIMAL = "optimal"
    TIMEOUT_BEST_EFFORT = "timeout_best_effort"


@dataclass(frozen=True)
class SolveConfig:
    """Knobs for one exact solve."""

    budget_k: int
    objective_mode: ObjectiveMode = ObjectiveMode.SNPV
    use_degree_one_filter: bool = True
    timeout_seconds: float = 600.0
    parallelism: int = 1

    def __post_init__(self) -> None:
        if self.budget_k < 0:
            raise ValueError("budget_k must be non-negative")
        if self.timeout_seconds <= 0:
            raise ValueError("timeout_seconds must be positive")
        if self.parallelism < 1:
            raise ValueError("parallelism must be at least 1")


@dataclass(frozen=True)
class Solution:
    """Chosen cut, its score, and how the search ended."""

    chosen: frozenset[int]
    report: ScoreReport
    status: SolveStatus
    subsets_evaluated: int
    elapsed_seconds: float


def excludable_devices(g: Graph, a: AttackSet) -> frozenset[int]:
    """Non-attacked devices with exactly one connection; safe to skip in the search."""
    _require_attacked_in_graph(g, a)
    return frozenset(
        i for i in g.device_ids if i not in a.attacked and g.degree(i) == 1
    )


def enumerate_candidates(eligible: Iterable[int], k: int) -> Iterator[tuple[int, ...]]:
    """Yield every subset of ``eligible`` of size 0..k exactly once.

    Order is deterministic: by size, then lexicographically on the sorted
    ids.  The empty cut always comes first.
    """
    if k < 0:
        raise ValueError("k must be non-negative")
    ids = sorted(set(eligible))
    for size in range(min(k, len(ids)) + 1):
        yield from combinations(ids, size)


def _candidate_key(
    cand: tuple[int, ...],
    vul: int,
    heal: int,
    multiplier: int,
    snpv: bool,
) -> tuple[int, int, tuple[int, ...]]:
    objective = multiplier * vul - heal if snpv else vul
    return (objective, len(cand), cand)


def _evaluate_chunk(args) -> tuple[Optional[tuple[int, int, tuple[int, ...]]], int]:
    """Score one batch of candidate cuts; return the local best key and count."""
    adj, order, attacked, multiplier, snpv, chunk = args
    best: Optional[tuple[int, int, tuple[int, ...]]] = None
    for cand in chunk:
        vul, heal = residual_pair_counts(adj, order, attacked, frozenset(cand))
        key = _candidate_key(cand, vul, heal, multiplier, snpv)
        if best is None or key < best:
            best = key
    return best, len(chunk)


def _chunked(stream: Iterator[tuple[int, ...]], size: int) -> Iterator[list[tuple[int, ...]]]:
    while True:
        block = list(islice(stream, size))
        if not block:
            return
        yield block


def solve_direct(g: Graph, a: AttackSet, config: SolveConfig) -> Solution:
    """Exhaustive search over all cuts of size at most ``config.budget_k``.

    Returns the objective-minimal cut; ties break toward the smallest cut,
    then the lexicographically smallest sorted id sequence, so results are
    identical for any evaluation order or parallelism setting.  When the
    timeout expires the best cut seen so far is returned with status
    ``TIMEOUT_BEST_EFFORT``.
    """
    _require_attacked_in_graph(g, a)
    start = time.perf_counter()
    deadline = start + config.timeout_seconds

    excluded = excludable_devices(g, a) if config.use_degree_one_filter else frozenset()
    eligible = g.device_ids - excluded
    adj = dict(g.adjacency())
    order = tuple(sorted(g.device_ids))
    multiplier = g.device_count**2 + 1
    snpv = config.objective_mode is ObjectiveMode.SNPV

    stream = enumerate_candidates(eligible, config.budget_k)
    best: Optional[tuple[int, int, tuple[int, ...]]] = None
    evaluated = 0
    status = SolveStatus.OPTIMAL

    if config.parallelism > 1:
        best, evaluated, status = _solve_parallel(
            adj, order, a.attacked, multiplier, snpv, stream, config.parallelism, deadline
        )
    else:
        for block in _chunked(stream, _CHUNK):
            local, n = _evaluate_chunk((adj, order, a.attacked, multiplier, snpv, block))
            evaluated += n
            if local is not None and (best is None or local < best):
                best = local
            if time.perf_counter() > deadline:
                # The stream may or may not be exhausted; peek one candidate.
                if next(stream, None) is not None:
                    status = SolveStatus.TIMEOUT_BEST_EFFORT
                break

    assert best is not None  # the empty cut is always evaluated first
    chosen = frozenset(best[2])
    report = score(
        remove_devices(g, chosen),
        AttackSet(a.attacked - chosen),
        multiplier_base=g.device_count,
    )
    return Solution(
        chosen=chosen,
        report=report,
        status=status,
        subsets_evaluated=evaluated,
        elapsed_seconds=time.perf_counter() - start,
    )


def _solve_parallel(
    adj,
    order,
    attacked,
    multiplier,
    snpv,
    stream,
    workers: int,
    deadline: float,
) -> tuple[Optional[tuple[int, int, tuple[int, ...]]], int, SolveStatus]:
    """Fan candidate chunks out to worker processes and reduce to the min key."""
    best: Optional[tuple[int, int, tuple[int, ...]]] = None
    evaluated = 0
    status = SolveStatus.OPTIMAL
    blocks = _chunked(stream, _PARALLEL_CHUNK)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending = set()
        exhausted = False
        while True:
            while not exhausted and len(pending) < 2 * workers:
                block = next(blocks, None)
                if block is None:
                    exhausted = True
                    break
                pending.add(
                    pool.submit(
                        _evaluate_chunk, (adj, order, attacked, multiplier, snpv, block)
                    )
                )
            if not pending:
                break
            done, pending = wait(pending, timeout=0.05, return_when=FIRST_COMPLETED)
            for fut in done:
                local, n = fut.result()
                evaluated += n
                if local is not None and (best is None or local < best):
                    best = local
            if time.perf_counter() > deadline and (pending or not exhausted):
                for fut in pending:
                    fut.cancel()
                status = SolveStatus.TIMEOUT_BEST_EFFORT
                pending = set()
                break
    return best, evaluated, status


def solve_oracle(
    g: Graph,
    a: AttackSet,
    k: int,
    objective_mode: ObjectiveMode = ObjectiveMode.SNPV,
) -> Solution:
    """Reference brute force: no pruning, pair-by-pair scoring.

    Walks every subset of *all* devices of size at most ``k`` and scores
    each residual network with :func:`score_bruteforce`.  Ground truth for
    tests; intended for small instances only.
    """
    _require_attacked_in_graph(g, a)
    start = time.perf_counter()
    multiplier = g.device_count**2 + 1
    snpv = objective_mode is ObjectiveMode.SNPV
    best: Optional[tuple[int, int, tuple[int, ...]]] = None
    best_report: Optional[ScoreReport] = None
    evaluated = 0
    for cand in enumerate_candidates(g.device_ids, k):
        cut = frozenset(cand)
        report = score_bruteforce(
            remove_devices(g, cut),
            AttackSet(a.attacked - cut),
            multiplier_base=g.device_count,
        )
        key = _candidate_key(cand, report.vulnerability, report.healthiness, multiplier, snpv)
        if best is None or key < best:
            best = key
            best_report = report
        evaluated += 1
    assert best is not None and best_report is not None
    return Solution(
        chosen=frozenset(best[2]),
        report=best_report,
        status=SolveStatus.OPTIMAL,
        subsets_evaluated=evaluated,
        elapsed_seconds=time.perf_counter() - start,
    )
