"""Phase-domain simulator and max-cut solver for oscillator-based Ising machines."""

from .dynamics import (
    DynamicsConfig,
    InjectionVariant,
    Mode,
    PhaseState,
    coupling_term,
    injection_phase_at,
    injection_term,
    make_rhs,
    potential_energy,
    rhs,
)
from .errors import CapacityError, ConfigError, DivergenceError, GraphParseError
from .experiments import (
    ComparisonSummary,
    SolveResult,
    SweepRow,
    SweepSpec,
    compare_modes,
    reference_graph,
    run_sweep,
    solve,
    sweep_to_csv,
)
from .integrate import IntegratorConfig, Trajectory, initial_phases, integrate, trajectory_to_csv
from .ising import (
    IsingInstance,
    MaxCutInstance,
    SpinAssignment,
    brute_force_ground_state,
    cut_value,
    hamiltonian_energy,
    ising_from_maxcut,
    maxcut_from_ising,
    parse_graph,
    random_instance,
    serialize_graph,
)
from .metrics import (
    LockReport,
    MetricTraces,
    binarize,
    compute_traces,
    lock_time,
    order_parameter,
    phase_lock_error,
    score_trajectory,
    traces_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "ComparisonSummary",
    "ConfigError",
    "DivergenceError",
    "DynamicsConfig",
    "GraphParseError",
    "InjectionVariant",
    "IntegratorConfig",
    "IsingInstance",
    "LockReport",
    "MaxCutInstance",
    "MetricTraces",
    "Mode",
    "PhaseState",
    "SolveResult",
    "SpinAssignment",
    "SweepRow",
    "SweepSpec",
    "Trajectory",
    "binarize",
    "brute_force_ground_state",
    "compare_modes",
    "compute_traces",
    "coupling_term",
    "cut_value",
    "hamiltonian_energy",
    "initial_phases",
    "injection_phase_at",
    "injection_term",
    "integrate",
    "ising_from_maxcut",
    "lock_time",
    "make_rhs",
    "maxcut_from_ising",
    "order_parameter",
    "parse_graph",
    "phase_lock_error",
    "potential_energy",
    "random_instance",
    "reference_graph",
    "rhs",
    "run_sweep",
    "score_trajectory",
    "serialize_graph",
    "solve",
    "sweep_to_csv",
    "trajectory_to_csv",
]
