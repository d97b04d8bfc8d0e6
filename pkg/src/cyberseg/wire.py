"""Shared JSON shapes for CLI output and the HTTP service.

Both front doors serialize through these helpers so a score computed via
the command line is field-for-field identical to one fetched over HTTP.
"""

from __future__ import annotations

from typing import Optional

from .exact import Solution
from .graph import AttackSet, Graph, ScoreReport, components, remove_devices, score
from .greedy import GreedySolution
from .instances import Instance


def score_report_to_dict(report: ScoreReport) -> dict:
    return {
        "vulnerability": report.vulnerability,
        "healthiness": report.healthiness,
        "phi": report.phi,
        "multiplier_base": report.multiplier_base,
    }


def solution_to_dict(solution: Solution) -> dict:
    doc = {
        "chosen": sorted(solution.chosen),
        "report": score_report_to_dict(solution.report),
        "status": solution.status.value,
        "subsets_evaluated": solution.subsets_evaluated,
        "elapsed_seconds": solution.elapsed_seconds,
    }
    if isinstance(solution, GreedySolution):
        doc["chunk_budgets"] = list(solution.chunk_budgets)
    return doc


def whatif_to_dict(inst: Instance, isolate: list[int]) -> dict:
    """Score a manual cut with the instance's original multiplier base."""
    cut = set(isolate)
    unknown = cut - inst.graph.device_ids
    if unknown:
        raise ValueError(f"unknown devices in isolate set: {sorted(unknown)}")
    residual = remove_devices(inst.graph, cut)
    residual_attack = AttackSet(inst.attacked.attacked - cut)
    report = score(residual, residual_attack, multiplier_base=inst.graph.device_count)
    breakdown = [
        {
            "devices": list(members),
            "size": summary.size,
            "attacked_count": summary.attacked_count,
        }
        for members, summary in components(residual, residual_attack)
    ]
    return {
        "isolate": sorted(cut),
        "report": score_report_to_dict(report),
        "components": breakdown,
    }


def chosen_labels(graph: Graph, chosen: frozenset[int]) -> Optional[list[str]]:
    """Labels for a cut, in id order, if every chosen device carries one."""
    labels = [graph.label(i) for i in sorted(chosen)]
    if any(lbl is None for lbl in labels):
        return None
    return labels  # type: ignore[return-value]
