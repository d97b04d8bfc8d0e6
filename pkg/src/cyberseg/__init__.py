"""Isolation planning for attacked device networks.

Given a network, a set of attacked devices, and a budget of devices that
may be isolated, this package scores residual networks (vulnerable vs
healthy connected pairs), finds optimal cuts by pruned exhaustive search,
approximates large budgets with a chunked greedy, and exports the problem
as an integer program for external MIP solvers.  A CLI (``cyberseg``) and
an HTTP service front the library.
"""

from .exact import (
    ObjectiveMode,
    SolveConfig,
    SolveStatus,
    Solution,
    enumerate_candidates,
    excludable_devices,
    solve_direct,
    solve_oracle,
)
from .graph import (
    AttackSet,
    ComponentSummary,
    ConnectionKind,
    Device,
    Graph,
    ScoreReport,
    are_connected,
    component_vulnerable_pairs,
    components,
    remove_devices,
    score,
    score_bruteforce,
)
from .greedy import GreedyConfig, GreedySolution, chunk_schedule, solve_greedy
from .ilp import (
    Assignment,
    IlpMode,
    IlpModel,
    ValidationReport,
    build_model,
    emit_lp,
    parse_assignment,
    validate_assignment,
)
from .instances import (
    FileSource,
    Instance,
    InstanceSpec,
    KarateSource,
    ParseError,
    Rounding,
    TreeSource,
    attacked_count,
    build_instance,
    generate_full_ary_tree,
    load_instance,
    load_karate,
    parse_edgelist,
    sample_attacked,
    save_instance,
)

__version__ = "0.1.0"

__all__ = [
    "AttackSet",
    "Assignment",
    "ComponentSummary",
    "ConnectionKind",
    "Device",
    "FileSource",
    "Graph",
    "GreedyConfig",
    "GreedySolution",
    "IlpMode",
    "IlpModel",
    "Instance",
    "InstanceSpec",
    "KarateSource",
    "ObjectiveMode",
    "ParseError",
    "Rounding",
    "ScoreReport",
    "Solution",
    "SolveConfig",
    "SolveStatus",
    "TreeSource",
    "ValidationReport",
    "are_connected",
    "attacked_count",
    "build_instance",
    "build_model",
    "chunk_schedule",
    "component_vulnerable_pairs",
    "components",
    "emit_lp",
    "enumerate_candidates",
    "excludable_devices",
    "generate_full_ary_tree",
    "load_instance",
    "load_karate",
    "parse_assignment",
    "parse_edgelist",
    "remove_devices",
    "sample_attacked",
    "save_instance",
    "score",
    "score_bruteforce",
    "solve_direct",
    "solve_greedy",
    "solve_oracle",
    "validate_assignment",
]
