import json

import numpy as np
import pytest

from cupulse import io
from cupulse.cli import main


def solve_to(tmp_path, *args, name="sol.txt"):
    out = tmp_path / name
    code = main(["solve", *args, "--out", str(out)])
    return code, out


def read_csv(path):
    lines = path.read_text().splitlines()
    return lines[0].split(","), np.array([[float(x) for x in l.split(",")] for l in lines[1:]])


def test_solve_cnot(tmp_path, capsys):
    code, out = solve_to(tmp_path, "--target", "x", "--fix-delta", "25MHz")
    assert code == 0
    assert "48.4123" in capsys.readouterr().out
    (sol,), angles, eps_a = io.load_solutions(out.read_text())
    assert sol.T == pytest.approx(10.0) and sol.P == 1 and eps_a == 10.0


def test_solve_controlled_h_fixed_time(tmp_path):
    code, out = solve_to(tmp_path, "--target", "h", "--fix-time", "10ns")
    sols, _, _ = io.load_solutions(out.read_text())
    assert code == 0
    assert any(
        (s.epsilon, s.xi, abs(s.tunneling)) == pytest.approx((0.0581, 0.0404, 0.0177), rel=1e-2) for s in sols
    )


def test_solve_identity(tmp_path):
    code, out = solve_to(tmp_path, "--euler", "0,0,0", "--fix-time", "10ns")
    (s,), _, _ = io.load_solutions(out.read_text())
    assert code == 0 and s.epsilon == s.xi


def test_unit_safety(tmp_path, capsys):
    code, _ = solve_to(tmp_path, "--target", "x", "--fix-delta", "25")
    assert code == 2
    assert "unit" in capsys.readouterr().err
    _, a = solve_to(tmp_path, "--target", "x", "--fix-delta", "25MHz", name="a.txt")
    _, b = solve_to(tmp_path, "--target", "x", "--fix-delta", "0.025GHz", name="b.txt")
    assert a.read_text() == b.read_text()


def test_usage_errors(tmp_path, capsys):
    assert solve_to(tmp_path, "--target", "x")[0] == 2
    assert solve_to(tmp_path, "--target", "x", "--fix-delta", "25MHz", "--fix-time", "1ns")[0] == 2
    assert solve_to(tmp_path, "--target", "bogus", "--fix-time", "1ns")[0] == 2
    # the target has no tunneling component
    code, _ = solve_to(tmp_path, "--euler", "0,90deg,0", "--fix-delta", "25MHz")
    assert code == 2
    assert "tunneling equation" in capsys.readouterr().err
    with pytest.raises(SystemExit) as e:
        main(["frobnicate"])
    assert e.value.code == 2


def test_solve_matrix_input(tmp_path):
    code, out = solve_to(tmp_path, "--matrix", "0,1;1,0", "--fix-delta", "25MHz")
    (s,), angles, _ = io.load_solutions(out.read_text())
    assert code == 0 and s.T == pytest.approx(10.0)


def test_determinism(tmp_path):
    _, a = solve_to(tmp_path, "--euler", "90deg,90deg,60deg", "--fix-time", "10ns", name="a.txt")
    _, b = solve_to(tmp_path, "--euler", "90deg,90deg,60deg", "--fix-time", "10ns", name="b.txt")
    assert a.read_bytes() == b.read_bytes()
    args = ["simulate", "--solution", str(a), "--initial", "10", "--dt", "0.5ns"]
    main(args + ["--csv", str(tmp_path / "1.csv")])
    main(args + ["--csv", str(tmp_path / "2.csv")])
    assert (tmp_path / "1.csv").read_bytes() == (tmp_path / "2.csv").read_bytes()


def test_round_trip_simulate_and_verify(tmp_path, capsys):
    _, sol = solve_to(tmp_path, "--target", "x", "--fix-delta", "25MHz")
    csv = tmp_path / "t.csv"
    assert main(["simulate", "--solution", str(sol), "--initial", "10", "--csv", str(csv)]) == 0
    header, rows = read_csv(csv)
    assert header == ["time_ns", "p00", "p01", "p10", "p11"]
    assert rows[-1, 0] == pytest.approx(10.0)
    assert rows[-1, 4] >= 0.999
    assert main(["verify", "--solution", str(sol), "--target", "x"]) == 0
    assert "per-block" in capsys.readouterr().out


def test_verify_corrupted_solution(tmp_path, capsys):
    _, sol = solve_to(tmp_path, "--target", "x", "--fix-delta", "25MHz")
    sols, angles, eps_a = io.load_solutions(sol.read_text())
    from dataclasses import replace

    bad = tmp_path / "bad.txt"
    bad.write_text(io.dump_solutions([replace(sols[0], epsilon=sols[0].epsilon * 1.1)], angles, eps_a))
    capsys.readouterr()
    assert main(["verify", "--solution", str(bad)]) == 1
    assert "fidelity (per-block phase)" in capsys.readouterr().out


def test_verify_integrality_warning(tmp_path, capsys):
    _, sol = solve_to(tmp_path, "--target", "h", "--fix-delta", "25MHz")
    main(["verify", "--solution", str(sol)])
    assert "not an integer" in capsys.readouterr().out


def test_simulate_state_validation(tmp_path, capsys):
    base = ["simulate", "--delta", "50MHz", "--epsilon", "30MHz", "--xi", "12.5MHz", "--pulse", "10ns", "--csv", str(tmp_path / "x.csv")]
    assert main(base + ["--initial", "0.866,0,0.433,0.25"]) == 2
    assert main(base + ["--initial", "0.866,0,0.433,0.25", "--normalize"]) == 0
    assert main(base + ["--initial", "0.5,0,0,0", "--subnormalized"]) == 0
    assert main(base + ["--initial", "1,0,0"]) == 2


def test_simulate_sample_state(tmp_path, capsys):
    csv = tmp_path / "sample.csv"
    code = main(
        [
            "simulate", "--delta-a", "50MHz", "--delta", "50MHz", "--epsilon-a", "10GHz",
            "--epsilon", "30MHz", "--xi", "12.5MHz", "--pulse", "10ns",
            "--initial", "sqrt(3)/2,0,sqrt(3)/4,1/4", "--csv", str(csv),
        ]
    )
    assert code == 0
    _, rows = read_csv(csv)
    np.testing.assert_allclose(rows[-1, 1:], [0.45, 0.30, 0.19, 0.06], atol=0.01)
    assert "∠+135" in capsys.readouterr().out


def test_zero_duration_simulation(tmp_path):
    csv = tmp_path / "z.csv"
    assert main(["simulate", "--delta", "25MHz", "--epsilon", "0MHz", "--initial", "01", "--csv", str(csv)]) == 0
    _, rows = read_csv(csv)
    assert rows.shape == (1, 5)
    np.testing.assert_array_equal(rows[0], [0, 0, 1, 0, 0])


def test_simulate_heisenberg_cnot(tmp_path):
    _, sol = solve_to(tmp_path, "--target", "x", "--fix-delta", "25MHz")
    csv = tmp_path / "heis.csv"
    args = ["simulate", "--solution", str(sol), "--coupling", "heisenberg", "--j", "48.4MHz",
            "--pre", "5ns", "--pulse", "10ns", "--post", "5ns", "--initial", "10", "--csv", str(csv)]
    assert main(args) == 0
    _, rows = read_csv(csv)
    assert rows[-1, 0] == pytest.approx(20.0)
    assert rows[-1, 4] >= 0.999


def test_config_file_merging(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"target": "x", "fix-delta": "25MHz"}))
    code, out = solve_to(tmp_path, "--config", str(cfg))
    assert code == 0
    (s,), _, _ = io.load_solutions(out.read_text())
    assert s.T == pytest.approx(10.0)
    # flags win over the config file
    code, out = solve_to(tmp_path, "--config", str(cfg), "--fix-delta", "50MHz", name="o.txt")
    (s,), _, _ = io.load_solutions(out.read_text())
    assert s.T == pytest.approx(5.0)
    kv = tmp_path / "cfg.txt"
    kv.write_text("target = h\nfix_time = 10ns\n")
    code, out = solve_to(tmp_path, "--config", str(kv), name="k.txt")
    assert code == 0 and len(io.load_solutions(out.read_text())[0]) == 2


def test_compare_feasibility_schedule(tmp_path, capsys):
    assert main(["compare"]) == 0
    out = capsys.readouterr().out
    assert "state overlap fidelity" in out
    assert main(["feasibility"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[3].split() == ["3", "10", "7", "False"]
    wave = tmp_path / "wave.csv"
    assert main(["schedule", "--csv", str(wave)]) == 0
    out = capsys.readouterr().out
    assert "total duration: 32.5 ns" in out
    assert "7.07106781187 ns" in out
    assert wave.read_text().startswith("time_ns,epsilon_b_GHz,xi_GHz")
    assert main(["schedule", "--timings", "cnot=10ns"]) == 2


def test_spectators_round_trip(tmp_path):
    code, out = solve_to(tmp_path, "--target", "x", "--fix-delta", "25MHz", "--spectators", "10MHz,20MHz,30MHz")
    assert code == 0
    (s,), _, _ = io.load_solutions(out.read_text())
    assert s.spectator_xis == pytest.approx((0.01, 0.02, 0.03))
    assert s.epsilon == pytest.approx(0.0484123 - 0.06, abs=1e-6)
    assert main(["verify", "--solution", str(out), "--target", "x"]) == 0
