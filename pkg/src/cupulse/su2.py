"""ZYZ Euler parameterisation of SU(2) and controlled-U targets."""
from dataclasses import dataclass

import numpy as np

from .linalg import UNITARY_TOL, block_diag, is_unitary

FOUR_PI = 4 * np.pi


class NotUnitary(ValueError):
    pass


class NotSpecialUnitary(ValueError):
    pass


@dataclass(frozen=True)
class EulerAngles:
    """Angles of ``Rz(beta) Ry(gamma) Rz(delta)``, in radians."""

    beta: float
    gamma: float
    delta: float

    def __iter__(self):
        return iter((self.beta, self.gamma, self.delta))


def from_euler(a):
    beta, gamma, delta = a
    s = (beta + delta) / 2
    d = (beta - delta) / 2
    c, sn = np.cos(gamma / 2), np.sin(gamma / 2)
    return np.array(
        [
            [np.exp(-1j * s) * c, -np.exp(-1j * d) * sn],
            [np.exp(1j * d) * sn, np.exp(1j * s) * c],
        ]
    )


def _check_su2(U, tol=UNITARY_TOL):
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2):
        raise ValueError(f"expected 2x2, got {U.shape}")
    if not is_unitary(U, tol):
        raise NotSpecialUnitary("matrix is not unitary")
    if abs(np.linalg.det(U) - 1) > tol:
        raise NotSpecialUnitary(f"determinant {np.linalg.det(U):.6g} != 1")
    return U


def to_euler(U, tol=1e-12):
    """Inverse of :func:`from_euler` with ``gamma`` in [0, pi].

    When ``gamma`` is 0 or pi only one of ``beta +/- delta`` is defined;
    the defined combination goes into ``beta`` and ``delta`` is 0.
    """
    U = _check_su2(U)
    a, b = U[0, 0], U[1, 0]
    gamma = 2 * np.arctan2(abs(b), abs(a))
    if abs(b) <= tol:
        beta, delta = -2 * np.angle(a), 0.0
    elif abs(a) <= tol:
        beta, delta = 2 * np.angle(b), 0.0
    else:
        total = -2 * np.angle(a)
        diff = 2 * np.angle(b)
        beta, delta = (total + diff) / 2, (total - diff) / 2
    return EulerAngles(float(beta % FOUR_PI), float(gamma), float(delta % FOUR_PI))


def project_su2(U):
    """Strip a phase so that ``det == 1``; returns ``(V, phi)`` with ``U = e^{i phi} V``."""
    U = np.asarray(U, dtype=complex)
    if U.shape != (2, 2) or not is_unitary(U):
        raise NotUnitary("matrix is not a 2x2 unitary")
    phi = float(np.angle(np.linalg.det(U)) / 2)
    if phi <= -np.pi / 2:
        phi += np.pi
    return np.exp(-1j * phi) * U, phi


@dataclass(frozen=True, eq=False)
class ControlledTarget:
    matrix: np.ndarray
    unitary: np.ndarray


def controlled_target(U):
    U = _check_su2(U)
    return ControlledTarget(block_diag(np.eye(2), U), U)


# (beta, gamma, delta); each realises the named gate up to a global phase
NAMED_GATES = {
    "i": EulerAngles(0.0, 0.0, 0.0),
    "x": EulerAngles(np.pi, np.pi, 0.0),
    "y": EulerAngles(0.0, np.pi, 0.0),
    "z": EulerAngles(np.pi, 0.0, 0.0),
    "h": EulerAngles(2 * np.pi, np.pi / 2, np.pi),
}

PAULI = {
    "i": np.eye(2, dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]]),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "h": np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
}


def phase_gate(theta):
    """Euler angles for ``diag(1, e^{i theta})`` up to global phase."""
    return EulerAngles(float(theta), 0.0, 0.0)


def named_gate(name):
    name = name.strip().lower()
    if name.startswith("phase:"):
        from .units import parse_angle

        return phase_gate(parse_angle(name.split(":", 1)[1]))
    try:
        return NAMED_GATES[name]
    except KeyError:
        raise KeyError(f"unknown gate {name!r}; known: {sorted(NAMED_GATES)} or phase:<angle>") from None
