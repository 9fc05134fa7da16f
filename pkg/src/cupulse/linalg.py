"""Small dense linear algebra for 2- and 4-level systems.

All frequencies are in GHz and all durations in ns, so a generator ``H``
applied for ``t`` produces the propagator ``exp(-2j*pi*H*t)``.
"""
from enum import Enum

import numpy as np

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-8


class NonHermitianInput(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class ModeUnsupported(ValueError):
    pass


class FidelityMode(Enum):
    GLOBAL_PHASE = "global"
    BLOCK_PHASE = "block"
    STATE_OVERLAP = "state"


def _check_square(H):
    H = np.asarray(H, dtype=complex)
    if H.ndim != 2 or H.shape[0] != H.shape[1] or H.shape[0] not in (2, 4):
        raise DimensionMismatch(f"expected a 2x2 or 4x4 matrix, got shape {H.shape}")
    if not np.all(np.isfinite(H)):
        raise ValueError("matrix has non-finite entries")
    return H


def is_hermitian(H, tol=HERMITIAN_TOL):
    H = np.asarray(H)
    return np.max(np.abs(H - H.conj().T)) <= tol


def is_unitary(U, tol=UNITARY_TOL):
    U = np.asarray(U)
    return np.max(np.abs(U.conj().T @ U - np.eye(U.shape[0]))) <= tol


def expm_unitary(H, t):
    """Propagator ``exp(-2j*pi*H*t)`` for a Hermitian ``H`` (GHz) and ``t`` (ns).

    Uses the eigendecomposition of ``H``; the result is unitary to machine
    precision regardless of the size of ``H*t``.
    """
    H = _check_square(H)
    if not is_hermitian(H):
        raise NonHermitianInput("generator is not Hermitian within 1e-10")
    if t < 0:
        raise ValueError("duration must be non-negative")
    # symmetrize so eigh sees an exactly Hermitian matrix
    w, v = np.linalg.eigh(0.5 * (H + H.conj().T))
    return (v * np.exp(-2j * np.pi * w * t)) @ v.conj().T


def su2_propagator(tunneling, bias, kappa, t):
    """Closed-form propagator of ``[[bias, tunneling - i kappa], [tunneling + i kappa, -bias]]``."""
    r = np.sqrt(tunneling**2 + bias**2 + kappa**2)
    phi = 2 * np.pi * r * t
    c = np.cos(phi)
    # sin(phi)/r -> 2 pi t as r -> 0
    s = 2 * np.pi * t * np.sinc(2 * r * t)
    return np.array(
        [
            [c - 1j * bias * s, (-1j * tunneling - kappa) * s],
            [(-1j * tunneling + kappa) * s, c + 1j * bias * s],
        ]
    )


def evolve(state, H, t):
    state = np.asarray(state, dtype=complex)
    H = _check_square(H)
    if state.shape != (H.shape[0],):
        raise DimensionMismatch(f"state of shape {state.shape} vs generator {H.shape}")
    return expm_unitary(H, t) @ state


def fidelity(A, B, mode=FidelityMode.GLOBAL_PHASE):
    """Phase-insensitive overlap between two unitaries or two states.

    ``GLOBAL_PHASE`` gives ``|tr(A^dag B)|/d``. ``BLOCK_PHASE`` (4x4 only)
    forgives an independent phase on each control block. ``STATE_OVERLAP``
    gives ``|<A|B>|^2``.
    """
    mode = FidelityMode(mode)
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise DimensionMismatch(f"{A.shape} vs {B.shape}")
    if mode is FidelityMode.STATE_OVERLAP:
        if A.ndim != 1:
            raise DimensionMismatch("state overlap needs vectors")
        return float(min(1.0, abs(np.vdot(A, B)) ** 2))
    if A.ndim != 2:
        raise DimensionMismatch("matrix fidelity needs square matrices")
    d = A.shape[0]
    M = A.conj().T @ B
    if mode is FidelityMode.GLOBAL_PHASE:
        f = abs(np.trace(M)) / d
    else:
        if d != 4:
            raise ModeUnsupported("block-phase fidelity is defined for 4x4 only")
        f = (abs(np.trace(M[:2, :2])) + abs(np.trace(M[2:, 2:]))) / 4
    return float(min(1.0, f))


def block_diag(A, B):
    out = np.zeros((4, 4), dtype=complex)
    out[:2, :2] = A
    out[2:, 2:] = B
    return out
