"""Command-line front end.

Exit codes: 0 success, 1 physics failure (fidelity or residual), 2 usage
or configuration error.
"""
import argparse
import ast
import json
import math
import operator
import sys
import warnings
from pathlib import Path

import numpy as np

from . import io, simulator
from .linalg import FidelityMode, fidelity
from .model import Anisotropic, Ising, QubitParams, TwoQubitParams
from .solver import (
    ApproximationInvalid,
    DegenerateTarget,
    FixTime,
    FixTunneling,
    NoFeasibleP,
    SignInfeasible,
    SolveSpec,
    feasibility,
    layout_adjust,
    solve,
    solve_controlled_u,
)
from .su2 import (
    NAMED_GATES,
    EulerAngles,
    NotSpecialUnitary,
    NotUnitary,
    controlled_target,
    from_euler,
    named_gate,
    project_su2,
    to_euler,
)
from .units import UnitError, fmt, parse_angle, parse_frequency, parse_time

PASS, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# --- small parsers ---------------------------------------------------------

_BINOPS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCS = {"sqrt": np.sqrt, "exp": np.exp, "cos": np.cos, "sin": np.sin}
_NAMES = {"pi": np.pi, "j": 1j, "i": 1j}


def _eval_number(text):
    """Evaluate a numeric expression such as ``sqrt(3)/2`` or ``0.5*exp(1j*pi/4)``."""

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float, complex)):
            return node.value
        if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
            return _BINOPS[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Name) and node.id in _NAMES:
            return _NAMES[node.id]
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _FUNCS
            and len(node.args) == 1
        ):
            return _FUNCS[node.func.id](ev(node.args[0]))
        raise UsageError(f"unsupported expression {text!r}")

    try:
        return complex(ev(ast.parse(text.strip(), mode="eval")))
    except SyntaxError:
        raise UsageError(f"cannot parse number {text!r}") from None


def _parse_state(text, dim=4, subnormalized=False, normalize=False):
    text = text.strip()
    labels = simulator.BASIS_LABELS
    for d, names in labels.items():
        if text in names and (d == dim or dim is None):
            state = np.zeros(d, dtype=complex)
            state[names.index(text)] = 1
            return state
    state = np.array([_eval_number(x) for x in text.split(",")])
    if dim is not None and state.shape != (dim,):
        raise UsageError(f"initial state needs {dim} amplitudes, got {state.size}")
    norm = np.linalg.norm(state)
    if normalize:
        return state / norm
    if abs(norm - 1) > 1e-6 and not subnormalized:
        raise UsageError(
            f"initial state has norm {norm:.9g}; pass --normalize or --subnormalized"
        )
    return state


def _parse_matrix(text):
    rows = [r for r in text.split(";")]
    M = np.array([[_eval_number(x) for x in r.split(",")] for r in rows])
    if M.shape != (2, 2):
        raise UsageError("--matrix needs 2x2 entries 'a,b;c,d'")
    return M


def _target_angles(args, required=True):
    """Euler angles from ``--target``, ``--euler`` or ``--matrix``."""
    given = [x for x in (args.target, args.euler, args.matrix) if x]
    if len(given) > 1:
        raise UsageError("give only one of --target, --euler, --matrix")
    if args.target:
        try:
            return named_gate(args.target)
        except KeyError as e:
            raise UsageError(str(e.args[0])) from None
    if args.euler:
        parts = args.euler.split(",")
        if len(parts) != 3:
            raise UsageError("--euler needs beta,gamma,delta")
        return EulerAngles(*(parse_angle(p) for p in parts))
    if args.matrix:
        V, _ = project_su2(_parse_matrix(args.matrix))
        return to_euler(V)
    if required:
        raise UsageError("a target is required (--target, --euler or --matrix)")
    return None


def _polar(z):
    return f"{abs(z):.4f}∠{math.degrees(math.atan2(z.imag, z.real)):+.2f}°"


def _write(path, text):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


# --- commands --------------------------------------------------------------


def _solution_table(sols):
    head = f"{'#':>2} {'branch':>6} {'eps[MHz]':>12} {'xi[MHz]':>12} {'Delta[MHz]':>12} {'k[MHz]':>12} {'T[ns]':>10} {'P':>3} {'residual':>10}"
    lines = [head]
    for i, s in enumerate(sols):
        lines.append(
            f"{i:>2} {s.branch:>+6d} {s.epsilon * 1e3:12.4f} {s.xi * 1e3:12.4f} "
            f"{s.tunneling * 1e3:12.4f} {s.kappa * 1e3:12.4f} {s.T:10.4f} {s.P:>3d} {s.residual:10.2e}"
        )
        for note in s.notes:
            lines.append(f"   warning: {note}")
        if s.approximate:
            lines.append(f"   approximate (Delta neglected): fidelity penalty {s.fidelity_penalty:.3e}")
    return "\n".join(lines)


def _passes(s):
    return s.residual <= 1e-9 or (s.approximate and s.fidelity_penalty <= 1e-3)


def cmd_solve(args):
    angles = _target_angles(args)
    if bool(args.fix_delta) == bool(args.fix_time):
        raise UsageError("give exactly one of --fix-delta / --fix-time")
    fix = FixTunneling(parse_frequency(args.fix_delta)) if args.fix_delta else FixTime(parse_time(args.fix_time))
    eps_a = parse_frequency(args.epsilon_a)
    spec = SolveSpec(angles, fix, P=args.P, epsilon_a=eps_a, max_winding=args.max_winding)
    approx = parse_frequency(args.approx_delta) if args.approx_delta else None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        sols = solve(spec, approx)
    if args.spectators:
        xis = [parse_frequency(x) for x in args.spectators.split(",")]
        sols = [layout_adjust(s, xis) for s in sols]
    print(f"target: beta={fmt(angles.beta)} gamma={fmt(angles.gamma)} delta={fmt(angles.delta)} rad")
    print(_solution_table(sols))
    if args.out:
        _write(args.out, io.dump_solutions(sols, angles, eps_a))
    return PASS if any(_passes(s) for s in sols) else FAIL


def _coupling(args, xi):
    kind = args.coupling
    if kind == "ising":
        return Ising(parse_frequency(args.xi) if args.xi else xi)
    j = parse_frequency(args.j) if args.j else None
    if kind == "heisenberg":
        return Anisotropic.heisenberg(j if j is not None else xi)
    jz = parse_frequency(args.jz) if args.jz else (j if j is not None else xi)
    jxy = parse_frequency(args.jxy) if args.jxy else None
    if kind == "xxz":
        if jxy is None:
            raise UsageError("--coupling xxz needs --jxy")
        return Anisotropic.xxz(jxy, jz)
    if kind == "xy":
        jxy = jxy if jxy is not None else j
        if jxy is None:
            raise UsageError("--coupling xy needs --jxy or --j")
        return Anisotropic.xy(jxy)
    raise UsageError(f"unknown coupling {kind!r}")


def _load_candidate(path, index):
    try:
        sols, angles, eps_a = io.load_solutions(Path(path).read_text())
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None
    if not 0 <= index < len(sols):
        raise UsageError(f"candidate {index} not in file ({len(sols)} candidates)")
    return sols[index], angles, eps_a


def _explicit_params(args):
    if args.delta is None or args.epsilon is None:
        raise UsageError("give --solution or at least --delta and --epsilon")
    delta = parse_frequency(args.delta)
    kappa = parse_frequency(args.kappa) if args.kappa else 0.0
    delta_a = parse_frequency(args.delta_a) if args.delta_a else delta
    eps_a = parse_frequency(args.epsilon_a) if args.epsilon_a else 10.0
    xi = parse_frequency(args.xi) if args.xi else 0.0
    coupling = _coupling(args, xi)
    if isinstance(coupling, Anisotropic):
        kappa = 0.0
    qa = QubitParams(delta_a, eps_a, kappa)
    return TwoQubitParams(qa, QubitParams(delta, parse_frequency(args.epsilon), kappa), coupling)


def cmd_simulate(args):
    dt = parse_time(args.dt)
    pre, post = parse_time(args.pre), parse_time(args.post)
    hold = parse_frequency(args.hold_bias)
    if args.solution:
        sol, _, eps_a = _load_candidate(args.solution, args.candidate)
        if args.epsilon_a:
            eps_a = parse_frequency(args.epsilon_a)
        coupling = _coupling(args, sol.xi)
        if args.pulse:
            from dataclasses import replace

            sol = replace(sol, T=parse_time(args.pulse))
        sched = simulator.pulse_schedule(sol, eps_a, coupling, pre, post, hold, dt)
    else:
        params = _explicit_params(args)
        pulse = parse_time(args.pulse) if args.pulse else 0.0
        segs = []
        if pre > 0:
            segs.append(simulator.PulseSegment(params.with_target_bias(hold), pre, "hold"))
        segs.append(simulator.PulseSegment(params, pulse, "pulse"))
        if post > 0:
            segs.append(simulator.PulseSegment(params.with_target_bias(hold), post, "hold"))
        sched = simulator.PulseSchedule(segs, dt)
    psi0 = _parse_state(args.initial, 4, args.subnormalized, args.normalize)
    trace, final = simulator.evolve_schedule(psi0, sched)
    _write(args.csv, io.trace_csv(trace))
    print(f"duration: {fmt(sched.duration)} ns")
    print("final state:")
    for label, amp, p in zip(simulator.BASIS_LABELS[4], final, np.abs(final) ** 2):
        print(f"  |{label}>  {_polar(amp)}   P={p:.6f}")
    return PASS


def _print_matrix(M):
    for row in M:
        print("  " + "  ".join(f"{_polar(z):>20}" for z in row))


def cmd_verify(args):
    sol, file_angles, eps_a = _load_candidate(args.solution, args.candidate)
    angles = _target_angles(args, required=False) or file_angles
    if args.epsilon_a:
        eps_a = parse_frequency(args.epsilon_a)
    target = controlled_target(from_euler(angles))
    sched = simulator.pulse_schedule(sol, eps_a)
    if sol.spectator_xis:
        # spectators in |0> shift the target bias back to the solved value
        from dataclasses import replace

        sched = simulator.pulse_schedule(replace(sol, epsilon=sol.epsilon + sum(sol.spectator_xis)), eps_a)
    result = simulator.tomography(sched, target)
    print("realized gate (columns = initial |00>,|01>,|10>,|11>):")
    _print_matrix(result.realized)
    print(f"fidelity (global phase): {result.fidelity_global:.9f}")
    print(f"fidelity (per-block phase): {result.fidelity_block:.9f}")
    prod = eps_a * sol.T
    if abs(prod - round(prod)) > 1e-6:
        print(f"warning: epsilon_A*T = {prod:.6g} is not an integer; blocks carry a relative phase")
    ok = result.fidelity_block >= args.threshold
    print("PASS" if ok else f"FAIL: block fidelity below {args.threshold}")
    return PASS if ok else FAIL


def cmd_compare(args):
    params = TwoQubitParams(
        QubitParams(parse_frequency(args.delta_a), parse_frequency(args.epsilon_a)),
        QubitParams(parse_frequency(args.delta), parse_frequency(args.epsilon)),
        Ising(parse_frequency(args.xi)),
    )
    psi0 = _parse_state(args.initial, 4, normalize=args.normalize)
    t = parse_time(args.time)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        rep = simulator.compare_reduced_full(params, psi0, t)
    print(f"{'state':>6} {'full':>20} {'P_full':>9} {'reduced':>20} {'P_red':>9} {'d|a|':>9} {'dphase[deg]':>12}")
    for i, label in enumerate(simulator.BASIS_LABELS[4]):
        f, r = rep.full[i], rep.reduced[i]
        print(
            f"{'|' + label + '>':>6} {_polar(f):>20} {abs(f) ** 2:9.4f} {_polar(r):>20} {abs(r) ** 2:9.4f} "
            f"{rep.modulus_delta[i]:+9.5f} {rep.phase_delta_deg[i]:+12.3f}"
        )
    print(f"state overlap fidelity: {rep.fidelity:.9f}")
    if args.csv:
        sched = simulator.PulseSchedule([simulator.PulseSegment(params, t)], parse_time(args.dt))
        _write(args.csv, io.trace_csv(simulator.evolve_schedule(psi0, sched)[0]))
    return PASS


def cmd_feasibility(args):
    ns = [args.n] if args.n else range(1, args.max_n + 1)
    print(f"{'n':>3} {'equations':>10} {'unknowns':>9} {'solvable':>9}")
    for n in ns:
        r = feasibility(n)
        print(f"{r.n_controls:>3} {r.equations:>10} {r.unknowns:>9} {str(r.solvable):>9}")
    return PASS


def cmd_schedule(args):
    timings = None
    if args.timings:
        timings = {}
        for item in args.timings.split(","):
            k, _, v = item.partition("=")
            timings[k.strip()] = parse_time(v)
    delta = parse_frequency(args.delta)
    eps_a = parse_frequency(args.epsilon_a)
    sched = simulator.conventional_controlled_h_schedule(timings, delta, eps_a, sample_dt=parse_time(args.dt))
    target = controlled_target(from_euler(NAMED_GATES["h"]))
    result = simulator.tomography(sched, target)
    print("conventional controlled-H schedule:")
    for seg in sched.segments:
        b = seg.params.qubit_b
        print(
            f"  {seg.label:<10} {fmt(seg.duration):>6} ns  eps_B={b.bias * 1e3:9.3f} MHz  "
            f"k_B={b.kappa * 1e3:8.3f} MHz  xi={seg.params.coupling.xi * 1e3:8.3f} MHz"
        )
    print(f"total duration: {fmt(sched.duration)} ns")
    print(f"block fidelity vs controlled-H: {result.fidelity_block:.9f}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        single = solve_controlled_u(SolveSpec(NAMED_GATES["h"], FixTunneling(delta), epsilon_a=eps_a))[0]
    print(f"single-pulse duration at Delta={fmt(delta * 1e3)} MHz: {fmt(single.T)} ns")
    if args.csv:
        rows = ["time_ns,epsilon_b_GHz,xi_GHz"]
        rows += [",".join(fmt(x) for x in r) for r in simulator.control_waveform(sched)]
        _write(args.csv, "\n".join(rows) + "\n")
    return PASS if result.fidelity_block >= 0.99 else FAIL


# --- parser ----------------------------------------------------------------


def _add_target(p):
    p.add_argument("--target", help="named gate: i, x, y, z, h or phase:<angle>")
    p.add_argument("--euler", help="beta,gamma,delta (radians, or with deg suffix)")
    p.add_argument("--matrix", help="2x2 unitary as 'a,b;c,d' (complex expressions allowed)")


def _add_physics(p):
    p.add_argument("--delta", help="target tunneling (e.g. 25MHz)")
    p.add_argument("--epsilon", help="target bias during the pulse")
    p.add_argument("--kappa", help="target kappa")
    p.add_argument("--delta-a", help="control tunneling (default: --delta)")
    p.add_argument("--epsilon-a", help="control bias (default 10GHz)")
    p.add_argument("--xi", help="Ising coupling")
    p.add_argument("--coupling", default="ising", choices=["ising", "xxz", "heisenberg", "xy"])
    p.add_argument("--j", help="heisenberg J; J_Z for xxz; J_X=J_Y for xy")
    p.add_argument("--jxy", help="J_X = J_Y for xxz / xy")
    p.add_argument("--jz", help="J_Z for xxz")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON or key=value file with defaults for this command")

    parser = argparse.ArgumentParser(prog="cupulse", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", parents=[common], help="solve for single-pulse parameters")
    _add_target(p)
    p.add_argument("--fix-delta", help="fixed tunneling, e.g. 25MHz")
    p.add_argument("--fix-time", help="fixed pulse duration, e.g. 10ns")
    p.add_argument("--P", type=int, default=None, help="integer of the identity condition (default smallest)")
    p.add_argument("--epsilon-a", default="10GHz")
    p.add_argument("--max-winding", type=int, default=0)
    p.add_argument("--approx-delta", help="non-zero Delta to neglect for diagonal targets")
    p.add_argument("--spectators", help="comma list of couplings to neighbours frozen in |0>")
    p.add_argument("--out", default="solution.txt", help="solution file ('-' for stdout, '' to skip)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("simulate", parents=[common], help="evolve a pulse and write a CSV trace")
    p.add_argument("--solution")
    p.add_argument("--candidate", type=int, default=0)
    _add_physics(p)
    p.add_argument("--pulse", help="pulse duration (default: solution T)")
    p.add_argument("--pre", default="0ns")
    p.add_argument("--post", default="0ns")
    p.add_argument("--hold-bias", default="-10GHz", help="target bias outside the pulse")
    p.add_argument("--initial", default="00", help="basis label or comma-separated amplitudes")
    p.add_argument("--subnormalized", action="store_true")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--dt", default="0.05ns")
    p.add_argument("--csv", default="trace.csv", help="output CSV ('-' for stdout)")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("verify", parents=[common], help="process tomography of a solution")
    p.add_argument("--solution", required=True)
    p.add_argument("--candidate", type=int, default=0)
    _add_target(p)
    p.add_argument("--epsilon-a")
    p.add_argument("--threshold", type=float, default=0.999)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("compare", parents=[common], help="reduced vs full model on one state")
    p.add_argument("--delta-a", default="50MHz")
    p.add_argument("--delta", default="50MHz")
    p.add_argument("--epsilon-a", default="10GHz")
    p.add_argument("--epsilon", default="30MHz")
    p.add_argument("--xi", default="12.5MHz")
    p.add_argument("--time", default="10ns")
    p.add_argument("--initial", default="sqrt(3)/2,0,sqrt(3)/4,1/4")
    p.add_argument("--normalize", action="store_true")
    p.add_argument("--dt", default="0.05ns")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("feasibility", parents=[common], help="equation count for n controls")
    p.add_argument("--n", type=int)
    p.add_argument("--max-n", type=int, default=10)
    p.set_defaults(func=cmd_feasibility)

    p = sub.add_parser("schedule", parents=[common], help="conventional controlled-H benchmark")
    p.add_argument("--timings", help="e.g. ry_pi_4=2.5ns,cnot=10ns,ry_7pi_4=17.5ns,idle=2.5ns")
    p.add_argument("--delta", default="25MHz")
    p.add_argument("--epsilon-a", default="10GHz")
    p.add_argument("--dt", default="0.05ns")
    p.add_argument("--csv")
    p.set_defaults(func=cmd_schedule)
    return parser, sub


def _read_config(path):
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = {}
        for line in text.splitlines():
            line = line.strip()
            if line and not line.startswith("#"):
                k, sep, v = line.partition("=")
                if not sep:
                    raise UsageError(f"bad config line {line!r}")
                data[k.strip()] = v.strip()
    if not isinstance(data, dict):
        raise UsageError("config must be a mapping")
    return {k.replace("-", "_"): v for k, v in data.items()}


def main(argv=None):
    parser, sub = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
        if args.config:
            sub.choices[args.command].set_defaults(**_read_config(args.config))
            args = parser.parse_args(argv)
        return args.func(args)
    except (
        UsageError,
        UnitError,
        DegenerateTarget,
        SignInfeasible,
        NoFeasibleP,
        ApproximationInvalid,
        NotSpecialUnitary,
        NotUnitary,
        io.SolutionFileError,
        ValueError,
    ) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
