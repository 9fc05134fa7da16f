"""Solve for a generic controlled rotation and print its process matrix."""
import numpy as np

from cupulse import EulerAngles, FixTime, SolveSpec, controlled_target, from_euler, pulse_schedule, solve_controlled_u
from cupulse import tomography

angles = EulerAngles(np.pi / 2, np.pi / 2, np.pi / 3)
for s in solve_controlled_u(SolveSpec(angles, FixTime(10.0))):
    res = tomography(pulse_schedule(s), controlled_target(from_euler(angles)))
    print(f"branch {s.branch:+d}: eps = {s.epsilon * 1e3:.2f}, xi = {s.xi * 1e3:.2f}, "
          f"Delta = {s.tunneling * 1e3:.3f}, k = {s.kappa * 1e3:.2f} MHz, block fidelity {res.fidelity_block:.6f}")
    for row in res.realized:
        print("   " + "  ".join(f"{abs(z):.3f}@{np.degrees(np.angle(z)):7.1f}" for z in row))
