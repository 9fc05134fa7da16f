"""Single-pulse controlled-H versus the textbook Ry, CNOT, Ry decomposition."""
import numpy as np

from cupulse import FixTime, FixTunneling, NAMED_GATES, SolveSpec, solve_controlled_u, tomography
from cupulse import conventional_controlled_h_schedule, controlled_target
from cupulse.su2 import PAULI

H = NAMED_GATES["h"]
fast = solve_controlled_u(SolveSpec(H, FixTunneling(0.025)))[0]
print(f"fixed Delta = 25 MHz: eps = {fast.epsilon * 1e3:.2f} MHz, xi = {fast.xi * 1e3:.2f} MHz, T = {fast.T:.3f} ns")

for s in solve_controlled_u(SolveSpec(H, FixTime(10.0))):
    print(f"fixed T = 10 ns, branch {s.branch:+d}: eps = {s.epsilon * 1e3:.2f}, xi = {s.xi * 1e3:.2f}, "
          f"Delta = {s.tunneling * 1e3:.2f} MHz")

sched = conventional_controlled_h_schedule()
res = tomography(sched, controlled_target(-1j * PAULI["h"]))
print(f"conventional sequence: {sched.duration} ns, block fidelity {res.fidelity_block:.6f}")
print(f"speed-up: {sched.duration / fast.T:.1f}x")
