"""Minimum-cost storage allocation for two-cost-class distributed storage.

Exact rational optimization of per-node storage levels under repair-aware
reconstruction constraints, plus two independent verification routes: staged
flow-graph max-flow analysis and a random-linear-coding simulator.
"""
from .core import (
    Allocation,
    Ratio,
    SystemParams,
    ValidationReport,
    format_ratio,
    parse_ratio,
    storage_cost,
    validate,
)
from .constraints import (
    TYPE1,
    TYPE2,
    HalfPlane,
    TypeVector,
    bandwidth_tail,
    generate_constraints,
    is_feasible,
    min_beta,
    mincut_bound,
    mincut_multipliers,
    raw_constraint_set,
    type_vectors,
)
from .lp import (
    CaseMismatch,
    Infeasible,
    OptimalAllocation,
    case_a_closed_form,
    classify_case,
    corner_point,
    grid_oracle,
    solve,
    vertices,
)
from .flowgraph import (
    DcProbe,
    FlowGraph,
    RepairEvent,
    ScenarioError,
    VerificationReport,
    adversarial_scenario,
    apply_repair,
    attach_dc,
    build_initial,
    exhaustive_dc_sets,
    format_scenario,
    max_flow,
    min_cut_bruteforce,
    parse_scenario,
    random_history,
    run_scenario,
    verify_allocation,
)
from .gf import GF2, GF256, GF2_FIELD, GF256_FIELD
from .rlnc import (
    CodedPacket,
    NodeState,
    PacketizationError,
    ReconstructionResult,
    SimulationReport,
    initial_distribution,
    matrix_rank,
    node_plan,
    packetize,
    reconstruct,
    repair,
    simulate_trials,
)
from .tradeoff import TradeoffPoint, region_boundary, sweep

__version__ = "0.1.0"

__all__ = [
    "Allocation",
    "CaseMismatch",
    "CodedPacket",
    "DcProbe",
    "FlowGraph",
    "GF2",
    "GF256",
    "GF2_FIELD",
    "GF256_FIELD",
    "HalfPlane",
    "Infeasible",
    "NodeState",
    "OptimalAllocation",
    "PacketizationError",
    "Ratio",
    "ReconstructionResult",
    "RepairEvent",
    "ScenarioError",
    "SimulationReport",
    "SystemParams",
    "TradeoffPoint",
    "TYPE1",
    "TYPE2",
    "TypeVector",
    "ValidationReport",
    "VerificationReport",
    "adversarial_scenario",
    "apply_repair",
    "attach_dc",
    "bandwidth_tail",
    "build_initial",
    "case_a_closed_form",
    "classify_case",
    "corner_point",
    "exhaustive_dc_sets",
    "format_ratio",
    "format_scenario",
    "generate_constraints",
    "grid_oracle",
    "initial_distribution",
    "is_feasible",
    "matrix_rank",
    "max_flow",
    "min_beta",
    "min_cut_bruteforce",
    "mincut_bound",
    "mincut_multipliers",
    "node_plan",
    "packetize",
    "parse_ratio",
    "parse_scenario",
    "random_history",
    "raw_constraint_set",
    "reconstruct",
    "region_boundary",
    "repair",
    "run_scenario",
    "simulate_trials",
    "solve",
    "storage_cost",
    "sweep",
    "type_vectors",
    "validate",
    "verify_allocation",
    "vertices",
]
