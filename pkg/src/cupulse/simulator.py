"""Piecewise-constant evolution of the two-qubit system.

Each segment is propagated exactly through the eigendecomposition of its
Hamiltonian, so there is no time-stepping error.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import DimensionMismatch, FidelityMode, block_diag, fidelity, is_unitary
from .model import (
    DEFAULT_CONTROL_BIAS,
    Anisotropic,
    Ising,
    QubitParams,
    Subspace,
    TwoQubitParams,
    WrongCouplingVariant,
    h_reduced,
    h_single,
    h_two,
)
from .linalg import expm_unitary
from .solver import FixTime, SolveSpec, solve_controlled_u
from .su2 import NAMED_GATES, ControlledTarget

DEFAULT_DT = 0.05
DEFAULT_HOLD_BIAS = -10.0  # GHz; +10 would be resonant with the control bias

BASIS_LABELS = {2: ("0", "1"), 4: ("00", "01", "10", "11")}


@dataclass(frozen=True)
class PulseSegment:
    params: object  # QubitParams or TwoQubitParams
    duration: float
    label: str = ""

    def __post_init__(self):
        if self.duration < 0:
            raise ValueError("segment duration must be non-negative")

    @property
    def dim(self):
        return 2 if isinstance(self.params, QubitParams) else 4

    def hamiltonian(self):
        if isinstance(self.params, QubitParams):
            return h_single(self.params)
        return h_two(self.params)


@dataclass(frozen=True)
class PulseSchedule:
    segments: tuple
    sample_dt: float = DEFAULT_DT

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.sample_dt > 0:
            raise ValueError("sample_dt must be positive")
        dims = {s.dim for s in self.segments}
        if len(dims) > 1:
            raise DimensionMismatch("segments mix one- and two-qubit parameters")

    @property
    def duration(self):
        return float(sum(s.duration for s in self.segments))

    @property
    def dim(self):
        return self.segments[0].dim if self.segments else 4


@dataclass(frozen=True, eq=False)
class ProbabilityTrace:
    times: np.ndarray
    probabilities: np.ndarray

    @property
    def labels(self):
        return BASIS_LABELS[self.probabilities.shape[1]]


@dataclass(frozen=True, eq=False)
class TomographyResult:
    realized: np.ndarray
    fidelity_global: float
    fidelity_block: float


def _sample_offsets(duration, dt):
    n = int(math.floor(duration / dt + 1e-9))
    taus = [k * dt for k in range(1, n + 1)]
    if not taus or duration - taus[-1] > 1e-9:
        taus.append(duration)
    else:
        taus[-1] = duration
    return np.array(taus)


def evolve_schedule(initial, sched, trace=True):
    """Evolve ``initial`` through ``sched``.

    Returns ``(ProbabilityTrace, final_state)``. With ``trace=False`` only the
    segment boundaries are sampled.
    """
    psi = np.asarray(initial, dtype=complex)
    if sched.segments and psi.shape != (sched.dim,):
        raise DimensionMismatch(f"state of shape {psi.shape} for a {sched.dim}-level schedule")
    times = [0.0]
    probs = [np.abs(psi) ** 2]
    t0 = 0.0
    for seg in sched.segments:
        if seg.duration == 0:
            continue
        H = seg.hamiltonian()
        w, v = np.linalg.eigh(0.5 * (H + H.conj().T))
        coeffs = v.conj().T @ psi
        taus = _sample_offsets(seg.duration, sched.sample_dt) if trace else np.array([seg.duration])
        # states at every sample offset: v @ diag(e^{-2 pi i w tau}) @ coeffs
        phases = np.exp(-2j * np.pi * np.outer(taus, w))
        states = (phases * coeffs) @ v.T
        times.extend(t0 + taus)
        probs.extend(np.abs(states) ** 2)
        psi = states[-1]
        t0 += seg.duration
    return ProbabilityTrace(np.array(times), np.array(probs)), psi


def propagator(sched):
    """Unitary of the whole schedule."""
    U = np.eye(sched.dim, dtype=complex)
    for seg in sched.segments:
        U = expm_unitary(seg.hamiltonian(), seg.duration) @ U
    return U


def tomography(sched, target):
    """Rebuild the realised gate column by column from basis-state runs."""
    target = target.matrix if isinstance(target, ControlledTarget) else np.asarray(target)
    dim = sched.dim
    cols = [evolve_schedule(np.eye(dim)[i], sched, trace=False)[1] for i in range(dim)]
    realized = np.column_stack(cols)
    if not is_unitary(realized):
        raise RuntimeError("realised gate is not unitary")
    f_global = fidelity(target, realized, FidelityMode.GLOBAL_PHASE)
    f_block = fidelity(target, realized, FidelityMode.BLOCK_PHASE) if dim == 4 else f_global
    return TomographyResult(realized, f_global, f_block)


def gate_params(sol, epsilon_a=DEFAULT_CONTROL_BIAS, coupling=None, target_bias=None):
    """Two-qubit parameters for a solved pulse.

    The control shares the target's tunneling and kappa. ``coupling``
    overrides the Ising coupling (anisotropic couplings drop kappa).
    """
    if coupling is None:
        coupling = Ising(sol.xi)
    bias = sol.epsilon if target_bias is None else target_bias
    kappa = sol.kappa if isinstance(coupling, Ising) else 0.0
    if isinstance(coupling, Anisotropic) and sol.kappa != 0:
        raise ValueError("anisotropic couplings cannot realise a solution with kappa != 0")
    return TwoQubitParams(
        QubitParams(sol.tunneling, epsilon_a, kappa),
        QubitParams(sol.tunneling, bias, kappa),
        coupling,
    )


def pulse_schedule(
    sol,
    epsilon_a=DEFAULT_CONTROL_BIAS,
    coupling=None,
    pre=0.0,
    post=0.0,
    hold_bias=DEFAULT_HOLD_BIAS,
    sample_dt=DEFAULT_DT,
):
    """Square pulse of the target bias, optionally framed by hold periods."""
    segs = []
    if pre > 0:
        segs.append(PulseSegment(gate_params(sol, epsilon_a, coupling, hold_bias), pre, "hold"))
    segs.append(PulseSegment(gate_params(sol, epsilon_a, coupling), sol.T, "pulse"))
    if post > 0:
        segs.append(PulseSegment(gate_params(sol, epsilon_a, coupling, hold_bias), post, "hold"))
    return PulseSchedule(segs, sample_dt)


@dataclass(frozen=True, eq=False)
class Comparison:
    full: np.ndarray
    reduced: np.ndarray
    reduced_zero: np.ndarray
    reduced_one: np.ndarray
    fidelity: float

    @property
    def modulus_delta(self):
        return np.abs(self.full) - np.abs(self.reduced)

    @property
    def phase_delta_deg(self):
        return np.degrees(np.angle(self.full * np.conj(self.reduced)))


def compare_reduced_full(params, initial, t):
    """Evolve ``initial`` with the full Hamiltonian and with the two reduced blocks.

    The reduced path evolves the (sub-normalised) target components of each
    control subspace independently and stacks them back together.
    """
    if not isinstance(params.coupling, Ising):
        raise WrongCouplingVariant("comparison needs Ising coupling")
    psi = np.asarray(initial, dtype=complex)
    if psi.shape != (4,):
        raise DimensionMismatch("initial state must have 4 amplitudes")
    full = expm_unitary(h_two(params), t) @ psi
    zero = expm_unitary(h_reduced(params, Subspace.CONTROL_ZERO), t) @ psi[:2]
    one = expm_unitary(h_reduced(params, Subspace.CONTROL_ONE), t) @ psi[2:]
    reduced = np.concatenate([zero, one])
    f = abs(np.vdot(full, reduced)) ** 2 / (np.vdot(full, full).real * np.vdot(reduced, reduced).real)
    return Comparison(full, reduced, zero, one, float(min(1.0, f)))


CONVENTIONAL_H_TIMINGS = {"ry_pi_4": 2.5, "cnot": 10.0, "ry_7pi_4": 17.5, "idle": 2.5}


class TimingsIncomplete(ValueError):
    pass


def conventional_controlled_h_schedule(
    timings=None,
    tunneling=0.025,
    epsilon_a=DEFAULT_CONTROL_BIAS,
    hold_bias=DEFAULT_HOLD_BIAS,
    sample_dt=DEFAULT_DT,
):
    """Controlled-H from ``Ry(pi/4)``, a CNOT pulse and ``Ry(7pi/4)`` on the target.

    The single-qubit rotations run with the coupling switched off and the
    rotation rate set by each segment's duration; the CNOT segment uses the
    single-pulse CNOT solution for its duration. A final idle holds the
    target. The result is controlled-(-iH) up to a global phase.
    """
    timings = dict(CONVENTIONAL_H_TIMINGS if timings is None else timings)
    missing = set(CONVENTIONAL_H_TIMINGS) - set(timings)
    if missing:
        raise TimingsIncomplete(f"missing timings: {sorted(missing)}")
    if any(timings[k] <= 0 for k in ("ry_pi_4", "cnot", "ry_7pi_4")):
        raise TimingsIncomplete("gate durations must be positive")

    cnot = [
        s
        for s in solve_controlled_u(SolveSpec(NAMED_GATES["x"], FixTime(timings["cnot"]), epsilon_a=epsilon_a))
        if s.tunneling >= 0
    ][0]
    control = QubitParams(tunneling, epsilon_a, 0.0)

    def rotation(angle, duration, label):
        rate = angle / (4 * np.pi * duration)  # Ry(angle) = exp(-2 pi i t rate sigma_y)
        p = TwoQubitParams(control, QubitParams(0.0, 0.0, rate), Ising(0.0))
        return PulseSegment(p, duration, label)

    segs = [
        rotation(np.pi / 4, timings["ry_pi_4"], "Ry(pi/4)"),
        PulseSegment(
            TwoQubitParams(
                QubitParams(cnot.tunneling, epsilon_a, 0.0),
                QubitParams(cnot.tunneling, cnot.epsilon, 0.0),
                Ising(cnot.xi),
            ),
            timings["cnot"],
            "CNOT",
        ),
        rotation(7 * np.pi / 4, timings["ry_7pi_4"], "Ry(7pi/4)"),
    ]
    if timings["idle"] > 0:
        segs.append(
            PulseSegment(
                TwoQubitParams(control, QubitParams(0.0, hold_bias, 0.0), Ising(0.0)),
                timings["idle"],
                "idle",
            )
        )
    return PulseSchedule(segs, sample_dt)


def control_waveform(sched):
    """Breakpoints ``(time, target bias, coupling)`` of a schedule."""
    rows = []
    t = 0.0
    for seg in sched.segments:
        p = seg.params
        xi = p.coupling.xi if isinstance(p.coupling, Ising) else p.coupling.jz
        rows.append((t, p.qubit_b.bias, xi))
        t += seg.duration
        rows.append((t, p.qubit_b.bias, xi))
    return rows
