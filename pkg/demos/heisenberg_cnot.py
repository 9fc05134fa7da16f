"""Run the Ising-derived CNOT pulse on Heisenberg and XXZ couplings."""
import numpy as np

from cupulse import Anisotropic, FixTunneling, NAMED_GATES, SolveSpec, evolve_schedule, pulse_schedule
from cupulse import solve_controlled_u

sol = solve_controlled_u(SolveSpec(NAMED_GATES["x"], FixTunneling(0.025)))[0]
truth = {0: 0, 1: 1, 2: 3, 3: 2}


def worst_case(coupling):
    sched = pulse_schedule(sol, coupling=coupling, pre=5.0, post=5.0)
    return min(abs(evolve_schedule(np.eye(4)[i], sched, trace=False)[1][j]) ** 2 for i, j in truth.items())


print(f"Heisenberg J = 48.4 MHz: worst truth-table probability {worst_case(Anisotropic.heisenberg(0.0484)):.5f}")
# Flip-flop terms shift the target levels by about (J_X + J_Y)^2 / (2 eps_A).
for jxy in np.linspace(0, 0.1, 6):
    print(f"XXZ J_X = J_Y = {jxy * 1e3:5.1f} MHz: {worst_case(Anisotropic.xxz(jxy, 0.0484)):.5f}")
