"""Pulse parameters that realise a controlled-SU(2) gate in one pulse.

The target qubit sees bias ``eps + xi`` when the control is |0> and
``eps - xi`` when it is |1>. A single square pulse of length ``T`` must
then give the identity in the first subspace and ``U`` (or ``-U``, which is
the same gate) in the second.
"""
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .linalg import FidelityMode, fidelity, su2_propagator
from .model import DEFAULT_CONTROL_BIAS
from .su2 import EulerAngles, from_euler

RESIDUAL_TOL = 1e-9
DEGENERACY_TOL = 1e-9
APPROX_LIMIT = 1e-3  # max Delta^2 T^2 for the diagonal approximation
INTEGRALITY_TOL = 1e-6


class DegenerateTarget(ValueError):
    pass


class SignInfeasible(ValueError):
    pass


class NoFeasibleP(ValueError):
    pass


class ApproximationInvalid(ValueError):
    pass


class BlockPhaseWarning(UserWarning):
    pass


@dataclass(frozen=True)
class FixTunneling:
    delta: float

    def __post_init__(self):
        if self.delta == 0:
            raise ValueError("fixed tunneling must be non-zero")


@dataclass(frozen=True)
class FixTime:
    T: float

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError("fixed time must be positive")


@dataclass(frozen=True)
class SolveSpec:
    angles: EulerAngles
    fix: object
    P: int | None = None  # None picks the smallest feasible integer
    epsilon_a: float = DEFAULT_CONTROL_BIAS
    max_winding: int = 0

    def __post_init__(self):
        if not isinstance(self.fix, (FixTunneling, FixTime)):
            raise TypeError("fix must be FixTunneling or FixTime")
        if self.P is not None and self.P < 1:
            raise ValueError("P must be >= 1")


@dataclass(frozen=True)
class GateSolution:
    epsilon: float
    xi: float
    tunneling: float
    kappa: float
    T: float
    P: int
    branch: int = 1
    residual: float = 0.0
    winding: int = 0
    spectator_xis: tuple = ()
    approximate: bool = False
    fidelity_penalty: float = 0.0
    notes: tuple = field(default=(), compare=False)

    @property
    def bias_zero(self):
        """Target bias seen when the control is |0>."""
        return self.epsilon + self.xi + sum(self.spectator_xis)

    @property
    def bias_one(self):
        return self.epsilon - self.xi + sum(self.spectator_xis)


@dataclass(frozen=True)
class FeasibilityReport:
    n_controls: int
    equations: int
    unknowns: int
    solvable: bool


@dataclass(frozen=True, eq=False)
class Verification:
    residuals: dict
    w_zero: np.ndarray
    w_one: np.ndarray
    fidelity_identity: float
    fidelity_target: float
    passed: bool

    @property
    def max_residual(self):
        return max(abs(v) for v in self.residuals.values())


def _target_terms(angles):
    beta, gamma, delta = angles
    s, d = (beta + delta) / 2, (beta - delta) / 2
    cg, sg = math.cos(gamma / 2), math.sin(gamma / 2)
    c = math.cos(s) * cg
    u = np.array([math.sin(s) * cg, math.cos(d) * sg, math.sin(d) * sg])
    return c, u


def residuals(sol, angles):
    """Left-minus-right defects of the identity condition and the four entry equations."""
    beta, gamma, delta = angles
    s, d = (beta + delta) / 2, (beta - delta) / 2
    cg, sg = math.cos(gamma / 2), math.sin(gamma / 2)
    dk2 = sol.tunneling**2 + sol.kappa**2
    r_plus = math.sqrt(dk2 + sol.bias_zero**2)
    r_minus = math.sqrt(dk2 + sol.bias_one**2)
    arg = 2 * math.pi * r_minus * sol.T
    sin_r = math.sin(arg) / r_minus if r_minus > 0 else 2 * math.pi * sol.T
    b = sol.branch
    return {
        "identity": r_plus * sol.T - sol.P,
        "cos": b * math.cos(s) * cg - math.cos(arg),
        "bias": b * math.sin(s) * cg - sol.bias_one * sin_r,
        "kappa": b * math.cos(d) * sg - sol.kappa * sin_r,
        "tunneling": b * math.sin(d) * sg + sol.tunneling * sin_r,
    }


def subspace_propagators(sol):
    """Reduced-model propagators for control |0> and |1> at the pulse length."""
    w0 = su2_propagator(sol.tunneling, sol.bias_zero, sol.kappa, sol.T)
    w1 = su2_propagator(sol.tunneling, sol.bias_one, sol.kappa, sol.T)
    return w0, w1


def verify_solution(sol, angles, tol=RESIDUAL_TOL):
    res = residuals(sol, angles)
    w0, w1 = subspace_propagators(sol)
    f_id = fidelity(np.eye(2), w0, FidelityMode.GLOBAL_PHASE)
    f_u = fidelity(sol.branch * from_euler(angles), w1, FidelityMode.GLOBAL_PHASE)
    ok = (
        max(abs(v) for v in res.values()) <= tol
        and f_id >= 1 - 1e-6
        and f_u >= 1 - 1e-9
    )
    return Verification(res, w0, w1, f_id, f_u, bool(ok))


def _smallest_p(T, dk2):
    p = max(1, math.ceil(T * math.sqrt(dk2) - 1e-12))
    while (p / T) ** 2 < dk2:
        p += 1
    return p


def _finish(tunneling, kappa, diff, T, spec, branch, winding):
    dk2 = tunneling**2 + kappa**2
    if spec.P is None:
        P = _smallest_p(T, dk2)
    else:
        P = spec.P
        if (P / T) ** 2 < dk2:
            raise NoFeasibleP(
                f"identity condition: P={P} needs (P/T)^2 >= Delta^2 + k^2 "
                f"({(P / T) ** 2:.6g} < {dk2:.6g})"
            )
    total = math.sqrt(max((P / T) ** 2 - dk2, 0.0))
    eps, xi = (total + diff) / 2, (total - diff) / 2
    return GateSolution(eps, xi, tunneling, kappa, T, P, branch, winding=winding)


def _integrality_note(epsilon_a, T):
    prod = epsilon_a * T
    if abs(prod - round(prod)) > INTEGRALITY_TOL:
        msg = (
            f"epsilon_A*T = {prod:.6g} is not an integer; the two control blocks "
            "pick up different phases in the full model"
        )
        warnings.warn(msg, BlockPhaseWarning, stacklevel=3)
        return (msg,)
    return ()


def solve_controlled_u(spec):
    """All candidate pulses for a non-diagonal target.

    Returns a list of :class:`GateSolution` with ``tunneling >= 0`` first.
    Each candidate realises ``branch * U`` on the target when the control is
    |1> and the identity when it is |0>.
    """
    angles = spec.angles
    if abs(math.sin(angles.gamma / 2)) <= DEGENERACY_TOL:
        raise DegenerateTarget("target is diagonal (gamma = 0); use solve_diagonal")
    c, u = _target_terms(angles)
    theta = math.acos(min(1.0, max(-1.0, c)))
    u_hat = u / np.linalg.norm(u)

    out = []
    infeasible = None
    for branch in (1, -1):
        # -U = cos(pi - theta) I - i sin(pi - theta) (-u_hat . sigma)
        base = theta if branch == 1 else math.pi - theta
        n = branch * u_hat
        for m in range(spec.max_winding + 1):
            angle = base + 2 * math.pi * m
            if angle <= 0:
                continue
            if isinstance(spec.fix, FixTime):
                T = spec.fix.T
                R = angle / (2 * math.pi * T)
            else:
                delta = spec.fix.delta
                # the tunneling component of the rotation axis is -Delta
                if abs(n[2]) <= 1e-12 or np.sign(-delta) != np.sign(n[2]):
                    continue
                R = -delta / n[2]
                T = angle / (2 * math.pi * R)
            diff, kappa, minus_delta = R * n
            if abs(kappa) < 1e-15:
                kappa = 0.0
            try:
                sol = _finish(-minus_delta, kappa, diff, T, spec, branch, m)
            except NoFeasibleP as e:
                infeasible = e
                continue
            if isinstance(spec.fix, FixTunneling):
                sol = replace(sol, tunneling=spec.fix.delta)
            res = residuals(sol, angles)
            worst = max(abs(v) for v in res.values())
            if worst > RESIDUAL_TOL:
                continue
            sol = replace(sol, residual=worst, notes=_integrality_note(spec.epsilon_a, sol.T))
            out.append(sol)
    if not out:
        if infeasible is not None:
            raise infeasible
        if isinstance(spec.fix, FixTunneling):
            raise SignInfeasible(
                "tunneling equation: the target has no tunneling component, so a "
                "fixed non-zero Delta cannot realise it"
            )
        raise NoFeasibleP("no candidate satisfied all equations")
    out.sort(key=lambda s: (s.tunneling < 0, s.winding, -s.branch))
    return out


def solve_diagonal(spec, tunneling=None):
    """Pulse for a diagonal target ``diag(e^{-i phi}, e^{i phi})``.

    With ``FixTime`` and no ``tunneling`` the pulse is exact with
    ``Delta = k = 0``. Otherwise ``Delta`` is taken as given (from
    ``FixTunneling`` or the ``tunneling`` argument), neglected in the
    equations, and the resulting fidelity loss is reported.
    """
    angles = spec.angles
    if abs(math.sin(angles.gamma / 2)) > DEGENERACY_TOL:
        raise ValueError("solve_diagonal needs a diagonal target (gamma = 0)")
    U = from_euler(angles)
    phase = -np.angle(U[0, 0])  # U = diag(e^{-i phase}, e^{+i phase})

    if isinstance(spec.fix, FixTunneling):
        tunneling = spec.fix.delta
        T = math.sqrt(APPROX_LIMIT) / abs(tunneling)
    else:
        T = spec.fix.T
    approximate = tunneling is not None and tunneling != 0
    if approximate and (tunneling * T) ** 2 > APPROX_LIMIT:
        raise ApproximationInvalid(
            f"Delta^2 T^2 = {(tunneling * T) ** 2:.3g} > {APPROX_LIMIT:g}"
        )

    diff = (phase % (2 * math.pi)) / (2 * math.pi * T)
    P = spec.P or 1
    total = P / T
    sol = GateSolution(
        (total + diff) / 2,
        (total - diff) / 2,
        tunneling if approximate else 0.0,
        0.0,
        T,
        P,
        branch=1,
        approximate=approximate,
    )
    notes = _integrality_note(spec.epsilon_a, T)
    if approximate:
        w0, w1 = subspace_propagators(sol)
        penalty = 1 - min(
            fidelity(np.eye(2), w0, FidelityMode.GLOBAL_PHASE),
            fidelity(U, w1, FidelityMode.GLOBAL_PHASE),
        )
        res = residuals(sol, angles)
        return [
            replace(
                sol,
                residual=max(abs(v) for v in res.values()),
                fidelity_penalty=penalty,
                notes=notes,
            )
        ]
    res = residuals(sol, angles)
    return [replace(sol, residual=max(abs(v) for v in res.values()), notes=notes)]


def solve(spec, tunneling=None):
    """Dispatch to :func:`solve_diagonal` or :func:`solve_controlled_u`."""
    if abs(math.sin(spec.angles.gamma / 2)) <= DEGENERACY_TOL:
        return solve_diagonal(spec, tunneling)
    return solve_controlled_u(spec)


def feasibility(n_controls):
    """Equation/unknown count for ``n`` controls acting on one target."""
    if n_controls < 1:
        raise ValueError("need at least one control")
    eqs = 2**n_controls + 2
    unknowns = n_controls + 4
    return FeasibilityReport(n_controls, eqs, unknowns, eqs <= unknowns)


def layout_adjust(sol, spectator_xis):
    """Shift the target bias so frozen |0> neighbours leave the gate unchanged."""
    extra = tuple(float(x) for x in spectator_xis)
    if not extra:
        return sol
    shift = sum(extra)
    return replace(
        sol,
        epsilon=sol.epsilon - shift,
        spectator_xis=sol.spectator_xis + extra,
    )
