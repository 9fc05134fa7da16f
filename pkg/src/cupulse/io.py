"""Solution files and CSV traces.

Solution files are flat ``key = value`` text. Every physical value carries
its unit so files stay readable and diff cleanly::

    schema_version = 1
    target.beta = 3.14159265359 rad
    candidate.0.epsilon = 48.4122918276 MHz
"""
import io as _io

from .solver import GateSolution
from .su2 import EulerAngles
from .units import fmt, fmt_mhz, parse_angle, parse_frequency, parse_time

SCHEMA_VERSION = 1

_FREQ_FIELDS = ("epsilon", "xi", "tunneling", "kappa")


class SolutionFileError(ValueError):
    pass


def dump_solutions(solutions, angles, epsilon_a):
    lines = [
        "# single-pulse controlled-SU(2) solutions",
        f"schema_version = {SCHEMA_VERSION}",
        f"target.beta = {fmt(angles.beta)} rad",
        f"target.gamma = {fmt(angles.gamma)} rad",
        f"target.delta = {fmt(angles.delta)} rad",
        f"epsilon_a = {fmt(epsilon_a)} GHz",
        f"candidates = {len(solutions)}",
    ]
    for i, s in enumerate(solutions):
        p = f"candidate.{i}."
        for name in _FREQ_FIELDS:
            lines.append(f"{p}{name} = {fmt_mhz(getattr(s, name))}")
        lines += [
            f"{p}T = {fmt(s.T)} ns",
            f"{p}P = {s.P}",
            f"{p}branch = {s.branch}",
            f"{p}winding = {s.winding}",
            f"{p}approximate = {int(s.approximate)}",
            f"{p}residual = {fmt(s.residual)}",
            (f"{p}spectators = " + ",".join(fmt_mhz(x) for x in s.spectator_xis)).rstrip(),
        ]
    return "\n".join(lines) + "\n"


def _parse_lines(text):
    out = {}
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SolutionFileError(f"line {n}: expected 'key = value'")
        k, v = line.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def load_solutions(text):
    """Parse a solution file; returns ``(solutions, angles, epsilon_a)``."""
    kv = _parse_lines(text)
    try:
        if int(kv["schema_version"]) != SCHEMA_VERSION:
            raise SolutionFileError(f"unsupported schema_version {kv['schema_version']}")
        angles = EulerAngles(*(parse_angle(kv[f"target.{a}"]) for a in ("beta", "gamma", "delta")))
        epsilon_a = parse_frequency(kv["epsilon_a"])
        sols = []
        for i in range(int(kv["candidates"])):
            p = f"candidate.{i}."
            spect = kv.get(p + "spectators", "")
            sols.append(
                GateSolution(
                    **{name: parse_frequency(kv[p + name]) for name in _FREQ_FIELDS},
                    T=parse_time(kv[p + "T"]),
                    P=int(kv[p + "P"]),
                    branch=int(kv[p + "branch"]),
                    winding=int(kv.get(p + "winding", 0)),
                    approximate=bool(int(kv.get(p + "approximate", 0))),
                    residual=float(kv.get(p + "residual", 0.0)),
                    spectator_xis=tuple(parse_frequency(x) for x in spect.split(",") if x.strip()),
                )
            )
    except KeyError as e:
        raise SolutionFileError(f"missing key {e.args[0]}") from None
    return sols, angles, epsilon_a


def trace_csv(trace):
    buf = _io.StringIO()
    header = ["time_ns"] + [f"p{label}" for label in trace.labels]
    buf.write(",".join(header) + "\n")
    for t, row in zip(trace.times, trace.probabilities):
        buf.write(",".join([fmt(t)] + [fmt(p) for p in row]) + "\n")
    return buf.getvalue()
