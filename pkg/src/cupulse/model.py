"""Hamiltonians and analytic propagators for one and two coupled qubits.

Basis order for two qubits is |00>, |01>, |10>, |11> with the first label
belonging to qubit A (the control).
"""
import warnings
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .linalg import su2_propagator

DEFAULT_CONTROL_BIAS = 10.0  # GHz
VALIDITY_RATIO = 100.0


class WrongCouplingVariant(ValueError):
    pass


class KappaUnsupported(ValueError):
    pass


class DegenerateParams(ValueError):
    pass


class ReducedModelWarning(UserWarning):
    pass


@dataclass(frozen=True)
class QubitParams:
    tunneling: float = 0.0
    bias: float = 0.0
    kappa: float = 0.0

    def __post_init__(self):
        if not all(np.isfinite([self.tunneling, self.bias, self.kappa])):
            raise ValueError("qubit parameters must be finite")


@dataclass(frozen=True)
class Ising:
    xi: float


@dataclass(frozen=True)
class Anisotropic:
    jx: float
    jy: float
    jz: float

    @classmethod
    def heisenberg(cls, j):
        return cls(j, j, j)

    @classmethod
    def xxz(cls, jxy, jz):
        return cls(jxy, jxy, jz)

    @classmethod
    def xy(cls, jx, jy=None):
        return cls(jx, jx if jy is None else jy, 0.0)


@dataclass(frozen=True)
class TwoQubitParams:
    qubit_a: QubitParams
    qubit_b: QubitParams
    coupling: object = field(default_factory=lambda: Ising(0.0))

    def __post_init__(self):
        if isinstance(self.coupling, Anisotropic) and (
            self.qubit_a.kappa != 0 or self.qubit_b.kappa != 0
        ):
            raise KappaUnsupported("anisotropic coupling carries no kappa terms")
        if not isinstance(self.coupling, (Ising, Anisotropic)):
            raise TypeError(f"unknown coupling {self.coupling!r}")

    def with_target_bias(self, bias):
        b = self.qubit_b
        return TwoQubitParams(self.qubit_a, QubitParams(b.tunneling, bias, b.kappa), self.coupling)


class Subspace(Enum):
    CONTROL_ZERO = 0
    CONTROL_ONE = 1


@dataclass(frozen=True)
class OscillationProfile:
    offset: float
    amplitude: float
    frequency: float
    initial: int = 0

    def p1(self, t):
        sign = -1.0 if self.initial == 0 else 1.0
        return self.offset + sign * self.amplitude * np.cos(2 * np.pi * self.frequency * np.asarray(t))


def h_single(p):
    return np.array(
        [[p.bias, p.tunneling - 1j * p.kappa], [p.tunneling + 1j * p.kappa, -p.bias]]
    )


def w_single(p, t):
    if t < 0:
        raise ValueError("duration must be non-negative")
    return su2_propagator(p.tunneling, p.bias, p.kappa, t)


def oscillation_profile(p, initial=0):
    """Offset, amplitude and frequency of the |1> population of a free qubit."""
    if initial not in (0, 1):
        raise ValueError("initial must be 0 or 1")
    off = p.tunneling**2 + p.kappa**2
    total = off + p.bias**2
    if total == 0:
        raise DegenerateParams("all qubit parameters are zero")
    sign = -1.0 if initial == 0 else 1.0
    offset = 0.5 + sign * p.bias**2 / (2 * total)
    return OscillationProfile(offset, off / (2 * total), 2 * np.sqrt(total), initial)


def _require_ising(p):
    if not isinstance(p.coupling, Ising):
        raise WrongCouplingVariant(f"expected Ising coupling, got {type(p.coupling).__name__}")
    return p.coupling.xi


def h_two_ising(p):
    xi = _require_ising(p)
    a, b = p.qubit_a, p.qubit_b
    da = a.tunneling - 1j * a.kappa
    db = b.tunneling - 1j * b.kappa
    ea, eb = a.bias, b.bias
    return np.array(
        [
            [ea + eb + xi, db, da, 0],
            [np.conj(db), ea - eb - xi, 0, da],
            [np.conj(da), 0, -ea + eb - xi, db],
            [0, np.conj(da), np.conj(db), -ea - eb + xi],
        ],
        dtype=complex,
    )


def h_two_aniso(p):
    if not isinstance(p.coupling, Anisotropic):
        raise WrongCouplingVariant(f"expected anisotropic coupling, got {type(p.coupling).__name__}")
    if p.qubit_a.kappa != 0 or p.qubit_b.kappa != 0:
        raise KappaUnsupported("anisotropic coupling carries no kappa terms")
    c = p.coupling
    da, db = p.qubit_a.tunneling, p.qubit_b.tunneling
    ea, eb = p.qubit_a.bias, p.qubit_b.bias
    return np.array(
        [
            [ea + eb + c.jz, db, da, c.jx - c.jy],
            [db, ea - eb - c.jz, c.jx + c.jy, da],
            [da, c.jx + c.jy, -ea + eb - c.jz, db],
            [c.jx - c.jy, da, db, -ea - eb + c.jz],
        ],
        dtype=complex,
    )


def h_two(p):
    """Full 4x4 Hamiltonian for either coupling family."""
    if isinstance(p.coupling, Ising):
        return h_two_ising(p)
    return h_two_aniso(p)


def validity_ratio(p):
    """``|eps_A| / |Delta_A|``; the reduced model needs this to be large."""
    da = np.hypot(p.qubit_a.tunneling, p.qubit_a.kappa)
    if da == 0:
        return np.inf
    return abs(p.qubit_a.bias) / da


def reduced_bias(p, s):
    xi = _require_ising(p)
    s = Subspace(s)
    return p.qubit_b.bias + (xi if s is Subspace.CONTROL_ZERO else -xi)


def _check_validity(p):
    ratio = validity_ratio(p)
    if ratio < VALIDITY_RATIO:
        warnings.warn(
            f"control bias/tunneling ratio {ratio:.3g} < {VALIDITY_RATIO:g}; "
            "reduced model is a poor approximation",
            ReducedModelWarning,
            stacklevel=3,
        )
    return ratio


def h_reduced(p, s):
    """Target-qubit Hamiltonian in the subspace where the control is frozen.

    The control bias only shifts the energy of each block and is dropped.
    """
    bias = reduced_bias(p, s)
    _check_validity(p)
    b = p.qubit_b
    return h_single(QubitParams(b.tunneling, bias, b.kappa))


def w_reduced(p, s, t):
    bias = reduced_bias(p, s)
    _check_validity(p)
    b = p.qubit_b
    return w_single(QubitParams(b.tunneling, bias, b.kappa), t)


def layout_bias(base, spectator_xis, control):
    return reduced_bias(base, control) + float(np.sum(spectator_xis))


def h_layout(base, spectator_xis, control):
    """Reduced target Hamiltonian with extra neighbours frozen in |0>.

    Each spectator coupling adds to the target bias regardless of the
    control state.
    """
    bias = layout_bias(base, spectator_xis, control)
    b = base.qubit_b
    return h_single(QubitParams(b.tunneling, bias, b.kappa))
