"""Solve for a single-pulse CNOT and check it against the reduced and full models."""
import numpy as np

from cupulse import FixTunneling, NAMED_GATES, SolveSpec, controlled_target, solve_controlled_u, tomography
from cupulse import pulse_schedule
from cupulse.solver import subspace_propagators

sol = solve_controlled_u(SolveSpec(NAMED_GATES["x"], FixTunneling(0.025)))[0]
print(f"eps = {sol.epsilon * 1e3:.4f} MHz, xi = {sol.xi * 1e3:.4f} MHz, T = {sol.T:.3f} ns (branch {sol.branch:+d})")

# Target qubit propagators in each control subspace.
w0, w1 = subspace_propagators(sol)
np.set_printoptions(precision=4, suppress=True)
print("control |0>:\n", w0)
print("control |1>:\n", w1)

# Same pulse on the full two-qubit Hamiltonian with a 10 GHz control bias.
res = tomography(pulse_schedule(sol), controlled_target(-1j * np.array([[0, 1], [1, 0]])))
print(f"block fidelity on the full model: {res.fidelity_block:.6f}")
