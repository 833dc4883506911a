"""Planning and verification toolkit for by-weight truncated-Taylor LCU simulation."""

from .errors import CapExceeded, ConvergenceError, TermListError
from .hamiltonian import (
    HamiltonianTerm,
    PauliString,
    SortedHamiltonian,
    format_term_list,
    logspread_hamiltonian,
    parse_hamiltonian,
    random_hamiltonian,
)
from .planner import (
    PlanStep,
    PlanTrace,
    TruncationVector,
    cost_of,
    epsilon_bound,
    full_order_levels,
    greedy_plan,
    insertion_gain,
    s_value,
    solve_t_root,
    t_infinity,
)
from .densesim import (
    ErrorReport,
    amplified_operator,
    exact_evolution,
    hamiltonian_matrix,
    multi_step_error,
    operator_norm,
    single_step_error,
    truncated_series_operator,
)
from .circuitmodel import (
    AncillaLayout,
    IdentityReport,
    ResourceEstimate,
    build_prepare,
    build_select,
    build_walk_operators,
    estimate_resources,
    layout_for,
    verify_identities,
)
from .report import ComparisonRow, generate_comparison_report, serialize_report

__version__ = "0.1.0"

__all__ = [
    "AncillaLayout",
    "CapExceeded",
    "ComparisonRow",
    "ConvergenceError",
    "ErrorReport",
    "HamiltonianTerm",
    "IdentityReport",
    "PauliString",
    "PlanStep",
    "PlanTrace",
    "ResourceEstimate",
    "SortedHamiltonian",
    "TermListError",
    "TruncationVector",
    "amplified_operator",
    "build_prepare",
    "build_select",
    "build_walk_operators",
    "cost_of",
    "epsilon_bound",
    "estimate_resources",
    "exact_evolution",
    "format_term_list",
    "full_order_levels",
    "generate_comparison_report",
    "greedy_plan",
    "hamiltonian_matrix",
    "insertion_gain",
    "layout_for",
    "logspread_hamiltonian",
    "multi_step_error",
    "operator_norm",
    "parse_hamiltonian",
    "random_hamiltonian",
    "s_value",
    "serialize_report",
    "single_step_error",
    "solve_t_root",
    "t_infinity",
    "truncated_series_operator",
    "verify_identities",
]
