"""Single-pulse controlled-unitary gates for coupled charge qubits."""
from .linalg import FidelityMode, block_diag, evolve, expm_unitary, fidelity, su2_propagator
from .model import (
    Anisotropic,
    Ising,
    QubitParams,
    Subspace,
    TwoQubitParams,
    h_reduced,
    h_single,
    h_two,
    w_reduced,
    w_single,
)
from .simulator import (
    PulseSchedule,
    PulseSegment,
    compare_reduced_full,
    conventional_controlled_h_schedule,
    evolve_schedule,
    propagator,
    pulse_schedule,
    tomography,
)
from .solver import (
    FixTime,
    FixTunneling,
    GateSolution,
    SolveSpec,
    feasibility,
    layout_adjust,
    solve,
    solve_controlled_u,
    solve_diagonal,
    verify_solution,
)
from .su2 import NAMED_GATES, EulerAngles, controlled_target, from_euler, named_gate, project_su2, to_euler

__version__ = "0.1.0"
