import warnings

import numpy as np
import pytest

from cupulse.linalg import block_diag, evolve, expm_unitary
from cupulse.model import (
    Anisotropic,
    DegenerateParams,
    Ising,
    KappaUnsupported,
    QubitParams,
    ReducedModelWarning,
    Subspace,
    TwoQubitParams,
    WrongCouplingVariant,
    h_layout,
    h_reduced,
    h_single,
    h_two_aniso,
    h_two_ising,
    oscillation_profile,
    reduced_bias,
    w_reduced,
    w_single,
)

ZERO, ONE = Subspace.CONTROL_ZERO, Subspace.CONTROL_ONE
CNOT = TwoQubitParams(QubitParams(0.025, 10.0), QubitParams(0.025, 0.0484), Ising(0.0484))
SAMPLE = TwoQubitParams(QubitParams(0.05, 10.0), QubitParams(0.05, 0.03), Ising(0.0125))


def random_pair(rng, ising=True, kappa=True):
    a = QubitParams(*rng.uniform(-0.1, 0.1, 2), rng.uniform(-0.1, 0.1) if kappa else 0.0)
    b = QubitParams(*rng.uniform(-0.1, 0.1, 2), rng.uniform(-0.1, 0.1) if kappa else 0.0)
    c = Ising(rng.uniform(-0.1, 0.1)) if ising else Anisotropic(*rng.uniform(-0.1, 0.1, 3))
    return TwoQubitParams(a, b, c)


def hermitian_defect(H):
    return np.max(np.abs(H - H.conj().T))


def test_h_single():
    np.testing.assert_array_equal(h_single(QubitParams()), np.zeros((2, 2)))
    np.testing.assert_allclose(
        h_single(QubitParams(0.025, 0.0484)), [[0.0484, 0.025], [0.025, -0.0484]]
    )
    H = h_single(QubitParams(0.1, -0.3, 0.2))
    assert hermitian_defect(H) <= 1e-15
    assert np.trace(H) == 0


def test_w_single_examples():
    np.testing.assert_allclose(w_single(QubitParams(0.3, 0.2, 0.1), 0), np.eye(2))
    np.testing.assert_allclose(w_single(QubitParams(0.025), 10), [[0, -1j], [-1j, 0]], atol=1e-12)
    np.testing.assert_allclose(w_single(QubitParams(bias=0.05), 5), np.diag([-1j, 1j]), atol=1e-12)


def test_w_single_is_special_unitary(rng):
    for _ in range(100):
        p = QubitParams(*rng.uniform(-0.2, 0.2, 3))
        W = w_single(p, rng.uniform(0, 50))
        assert abs(np.linalg.det(W) - 1) <= 1e-10


def test_oscillation_profile_examples():
    p = oscillation_profile(QubitParams(0.025))
    assert (p.offset, p.amplitude, p.frequency) == pytest.approx((0.5, 0.5, 0.05))
    frozen = oscillation_profile(QubitParams(0.025, 10.0))
    expected = 0.025**2 / (2 * (0.025**2 + 100))
    assert frozen.amplitude == pytest.approx(expected)
    assert frozen.offset == pytest.approx(expected, abs=1e-15)
    sym = oscillation_profile(QubitParams(0.03, 0.03))
    assert (sym.offset, sym.amplitude, sym.frequency) == pytest.approx((0.25, 0.25, 2 * np.sqrt(2) * 0.03))
    with pytest.raises(DegenerateParams):
        oscillation_profile(QubitParams())


def test_oscillation_profile_matches_evolution(rng):
    for _ in range(100):
        p = QubitParams(*rng.uniform(-0.1, 0.1, 3))
        t = rng.uniform(0, 40)
        for initial in (0, 1):
            ket = np.eye(2)[initial]
            prof = oscillation_profile(p, initial)
            p1 = abs(evolve(ket, h_single(p), t)[1]) ** 2
            assert abs(prof.p1(t) - p1) <= 1e-10


def test_large_bias_freezes_qubit():
    p = QubitParams(0.025, 400 * 0.025)
    t = np.linspace(0, 50, 2001)
    assert np.max(np.abs(oscillation_profile(p, 0).p1(t) - 0)) <= 1e-5
    assert np.max(np.abs(oscillation_profile(p, 1).p1(t) - 1)) <= 1e-5


def test_h_two_ising_entries():
    np.testing.assert_array_equal(h_two_ising(TwoQubitParams(QubitParams(), QubitParams(), Ising(0))), 0)
    H = h_two_ising(SAMPLE)
    assert H[0, 0].real == pytest.approx(10.0425)
    assert H[3, 3].real == pytest.approx(-10.0175)
    H0 = h_two_ising(TwoQubitParams(QubitParams(0, 10), QubitParams(0.05, 0.03, 0.01), Ising(0.0125)))
    assert np.all(H0[:2, 2:] == 0) and np.all(H0[2:, :2] == 0)
    with pytest.raises(WrongCouplingVariant):
        h_two_ising(TwoQubitParams(QubitParams(), QubitParams(), Anisotropic(0, 0, 0)))


def test_h_two_aniso():
    a, b = QubitParams(0.025, 10.0), QubitParams(0.025, 0.0484)
    np.testing.assert_allclose(
        h_two_aniso(TwoQubitParams(a, b, Anisotropic(0, 0, 0.0484))),
        h_two_ising(TwoQubitParams(a, b, Ising(0.0484))),
    )
    H = h_two_aniso(TwoQubitParams(a, b, Anisotropic.heisenberg(0.0484)))
    assert H[0, 3] == 0 and H[3, 0] == 0
    assert H[1, 2] == pytest.approx(0.0968) and H[2, 1] == pytest.approx(0.0968)
    Hxy = h_two_aniso(TwoQubitParams(QubitParams(0, 0.3), QubitParams(0, 0.1), Anisotropic.xy(0.05)))
    np.testing.assert_allclose(np.diag(Hxy).real, [0.4, 0.2, -0.2, -0.4])
    with pytest.raises(KappaUnsupported):
        TwoQubitParams(QubitParams(kappa=0.1), b, Anisotropic(0, 0, 0))
    with pytest.raises(WrongCouplingVariant):
        h_two_aniso(CNOT)


def test_builders_are_hermitian(rng):
    for _ in range(50):
        assert hermitian_defect(h_two_ising(random_pair(rng))) <= 1e-15
        assert hermitian_defect(h_two_aniso(random_pair(rng, ising=False, kappa=False))) <= 1e-15
        assert hermitian_defect(h_single(QubitParams(*rng.normal(size=3)))) <= 1e-15


def test_reduced_biases():
    p = TwoQubitParams(QubitParams(0.025, 10), QubitParams(0.05, 0.03, 0.01), Ising(0.0))
    np.testing.assert_array_equal(h_reduced(p, ZERO), h_single(p.qubit_b))
    np.testing.assert_array_equal(h_reduced(p, ONE), h_single(p.qubit_b))
    assert reduced_bias(SAMPLE, ZERO) == pytest.approx(0.0425)
    assert reduced_bias(SAMPLE, ONE) == pytest.approx(0.0175)
    assert reduced_bias(CNOT, ONE) == 0
    assert reduced_bias(CNOT, ZERO) == pytest.approx(0.0968)


def test_reduced_warns_when_control_not_frozen():
    p = TwoQubitParams(QubitParams(0.025, 0.5), QubitParams(0.025, 0.03), Ising(0.01))
    with pytest.warns(ReducedModelWarning):
        h_reduced(p, ZERO)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        h_reduced(CNOT, ZERO)


def test_w_reduced_examples():
    np.testing.assert_allclose(w_reduced(CNOT, ZERO, 0), np.eye(2))
    # rounded 48.4 MHz gives r*T = 0.99975, a quarter-milli-period short of identity
    np.testing.assert_allclose(w_reduced(CNOT, ZERO, 10), np.eye(2), atol=2e-3)
    e = np.sqrt(0.01 - 0.025**2) / 2
    exact = TwoQubitParams(QubitParams(0.025, 10.0), QubitParams(0.025, e), Ising(e))
    np.testing.assert_allclose(w_reduced(exact, ZERO, 10), np.eye(2), atol=1e-12)
    np.testing.assert_allclose(w_reduced(CNOT, ONE, 10), [[0, -1j], [-1j, 0]], atol=1e-12)


def test_w_reduced_matches_expm(rng):
    for _ in range(50):
        p = random_pair(rng)
        p = TwoQubitParams(QubitParams(0.0, 10.0), p.qubit_b, p.coupling)
        t = rng.uniform(0, 30)
        for s in (ZERO, ONE):
            np.testing.assert_allclose(w_reduced(p, s, t), expm_unitary(h_reduced(p, s), t), atol=1e-10)


def test_block_factorization_is_exact_without_control_tunneling(rng):
    for _ in range(100):
        p = random_pair(rng)
        ea = rng.uniform(1, 20)
        p = TwoQubitParams(QubitParams(0.0, ea, 0.0), p.qubit_b, p.coupling)
        t = rng.uniform(0, 30)
        expected = block_diag(
            np.exp(-2j * np.pi * ea * t) * w_reduced(p, ZERO, t),
            np.exp(2j * np.pi * ea * t) * w_reduced(p, ONE, t),
        )
        assert np.max(np.abs(expm_unitary(h_two_ising(p), t) - expected)) <= 1e-9


def test_layout_hamiltonian():
    for s in (ZERO, ONE):
        np.testing.assert_array_equal(h_layout(CNOT, [], s), h_reduced(CNOT, s))
    H = h_layout(CNOT, [0.01, 0.02, 0.03], ONE)
    assert H[0, 0].real == pytest.approx(0.06)
    H0 = h_layout(CNOT, [0.01, 0.02, 0.03], ZERO)
    assert H0[0, 0].real - H[0, 0].real == pytest.approx(2 * 0.0484)
