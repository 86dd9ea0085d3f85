"""Delay-robust routing in temporal graphs.

Verify whether a fixed route survives a bounded number of adversarial
delays, search for robust routes with exact solvers of different flavors,
and generate hard instances from satisfiability and clique problems.
"""

from . import fes, pareto, tfvs
from .oracle import (
    brute_force_arrival_vector,
    brute_force_robust,
    brute_force_solve,
    earliest_delayed_arrival,
)
from .reductions import (
    And,
    CnfInstance,
    GadgetInstance,
    Lit,
    MCPSatInstance,
    MulticoloredGraph,
    Or,
    eval_mcpsat,
    mcc_to_mcpsat,
    mcpsat_to_drp,
    threesat_to_mcpsat,
    verify_layout,
)
from .temporal_graph import (
    INF,
    STARTING,
    TRAVERSAL,
    BudgetError,
    DelaySet,
    DRPInstance,
    Route,
    StaticGraph,
    TemporalGraph,
    TimeArc,
    ValidationError,
    build_graph,
    is_delayed_walk,
    underlying_graph,
    validate_route,
)
from .verifier import (
    ArrivalVector,
    WorstCaseTable,
    available_arcs,
    is_delay_robust,
    worst_case_step,
    worst_case_table,
)

__version__ = "0.1.0"

__all__ = [
    "And",
    "ArrivalVector",
    "BudgetError",
    "CnfInstance",
    "DRPInstance",
    "DelaySet",
    "GadgetInstance",
    "INF",
    "Lit",
    "MCPSatInstance",
    "MulticoloredGraph",
    "Or",
    "Route",
    "STARTING",
    "StaticGraph",
    "TRAVERSAL",
    "TemporalGraph",
    "TimeArc",
    "ValidationError",
    "WorstCaseTable",
    "available_arcs",
    "brute_force_arrival_vector",
    "brute_force_robust",
    "brute_force_solve",
    "build_graph",
    "earliest_delayed_arrival",
    "eval_mcpsat",
    "fes",
    "is_delay_robust",
    "is_delayed_walk",
    "mcc_to_mcpsat",
    "mcpsat_to_drp",
    "pareto",
    "tfvs",
    "threesat_to_mcpsat",
    "underlying_graph",
    "validate_route",
    "verify_layout",
    "worst_case_step",
    "worst_case_table",
]
