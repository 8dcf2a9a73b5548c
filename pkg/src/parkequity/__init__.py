"""Equity-aware park location planning as a mixed-integer program.

The usual flow is: load an instance (:func:`load_instance`), build the
model (:func:`build_model`), solve it exactly at desk scale
(:func:`solve_enumerate`) or export it for an external solver
(:func:`write_mps`), then inspect the result (:func:`evaluate_assignment`).
"""

__version__ = "0.1.0"

from .evaluate import AssignmentError, DeviationReport, evaluate_assignment
from .instance import (
    AccessConfig,
    InstanceError,
    ObjectiveKind,
    ParkInstance,
    ParkSite,
    ResidentLocation,
    load_instance,
    validate_instance,
)
from .milp import MipModel, build_model, canonical_lift, check_solution_feasibility, compute_big_m
from .mps import read_mps, write_mps
from .policy import (
    PlanMode,
    budget_sweep,
    calibrate_emphasis,
    plan_horizon,
    summarize,
    threshold_sensitivity,
)
from .solve import (
    Provenance,
    Solution,
    SolveLimits,
    Status,
    assign_uncapacitated,
    read_solution_file,
    solve_enumerate,
    solve_model_enumerate,
    solve_via_external,
)

__all__ = [
    "AccessConfig", "AssignmentError", "DeviationReport", "InstanceError", "MipModel", "ObjectiveKind",
    "ParkInstance", "ParkSite", "PlanMode", "Provenance", "ResidentLocation", "Solution", "SolveLimits",
    "Status", "assign_uncapacitated", "budget_sweep", "build_model", "calibrate_emphasis", "canonical_lift",
    "check_solution_feasibility", "compute_big_m", "evaluate_assignment", "load_instance", "plan_horizon",
    "read_mps", "read_solution_file", "solve_enumerate", "solve_model_enumerate", "solve_via_external",
    "summarize", "threshold_sensitivity", "validate_instance", "write_mps",
]
