"""
EquiPart (c) 2026 EquiPart contributors
This code is licensed under GNU LESSER GENERAL PUBLIC LICENSE (see LICENSE for details)
"""
import json
import time

import pytest

from EquiPart import (
    CSV_COLUMNS,
    Error,
    Instance,
    SizeParams,
    complete_graph,
    cycle_graph,
    gen_random_instance,
    generated_instance_text,
    parse_instance,
    parse_solution,
    path_graph,
    serialize_instance,
    star_graph,
    UsageError,
    verify_partition,
)
from EquiPart.cli import EXIT_DATA, EXIT_NO, EXIT_UNKNOWN, EXIT_USAGE, EXIT_YES, main


def _write_instance(path, instance):
    path.write_text(serialize_instance(instance))
    return str(path)


@pytest.fixture
def p4(tmp_path):
    return _write_instance(tmp_path / "p4.ecp", Instance(path_graph(4), 2))


def test_solve_yes_writes_a_solution(tmp_path, p4, capsys):
    output = tmp_path / "p4.sol"
    assert main(["solve", "--input", p4, "--output", str(output), "--no-timing"]) == EXIT_YES
    assert "answer yes" in capsys.readouterr().out
    instance = parse_instance(open(p4).read())
    assert verify_partition(instance, parse_solution(output.read_text(), instance))


def test_solve_no(tmp_path, capsys):
    star = _write_instance(tmp_path / "star.ecp", Instance(star_graph(3), 2))
    output = tmp_path / "star.sol"
    assert main(["solve", "--input", star, "--output", str(output)]) == EXIT_NO
    assert output.read_text() == "s no\n"


def test_solve_unknown_writes_no_solution(tmp_path):
    big = _write_instance(tmp_path / "c12.ecp", Instance(cycle_graph(12), 4))
    output = tmp_path / "c.sol"
    code = main(["solve", "--input", big, "--algo", "oracle", "--node-limit", "1", "--output", str(output)])
    assert code == EXIT_UNKNOWN
    assert not output.exists()


def test_solve_json(p4, capsys):
    assert main(["solve", "--input", p4, "--format", "json", "--no-timing"]) == EXIT_YES
    data = json.loads(capsys.readouterr().out)
    assert data["answer"] == "yes"
    assert data["millis"] == 0


def test_forced_solver_outside_its_class(p4, capsys):
    assert main(["solve", "--input", p4, "--algo", "cograph"]) == EXIT_DATA
    assert "cograph" in capsys.readouterr().err


def test_verify(tmp_path, p4, capsys):
    good = tmp_path / "good.sol"
    good.write_text("s yes\na 1 1\na 2 1\na 3 2\na 4 2\n")
    assert main(["verify", "--input", p4, "--solution", str(good)]) == EXIT_YES
    assert capsys.readouterr().out == "valid\n"

    bad = tmp_path / "bad.sol"
    bad.write_text("s yes\na 1 1\na 2 2\na 3 1\na 4 2\n")
    assert main(["verify", "--input", p4, "--solution", str(bad)]) == EXIT_NO
    out = capsys.readouterr().out
    assert out.startswith("invalid\n")
    assert "violation disconnected part 1" in out


def test_analyze(tmp_path, capsys):
    cycle = _write_instance(tmp_path / "c5.ecp", parse_instance("p ecp 5 5 1\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"))
    assert main(["analyze", "--input", cycle, "--budget", "vertex-cover=1"]) == EXIT_YES
    out = capsys.readouterr().out
    assert "param vertex-cover exceeded\n" in out
    assert "param feedback-edge-set 1\n" in out
    assert "param cograph no\n" in out


def test_analyze_json(p4, capsys):
    assert main(["analyze", "--input", p4, "--format", "json"]) == EXIT_YES
    data = json.loads(capsys.readouterr().out)
    assert data["vertex-cover"] == 2
    assert data["cograph"] is False


def test_analyze_time_limit_bounds_the_scan(tmp_path, capsys):
    path = _write_instance(tmp_path / "p40.ecp", Instance(path_graph(40), 5))
    started = time.perf_counter()
    assert main(["analyze", "--input", path, "--time-limit", "0.2"]) == EXIT_YES
    assert time.perf_counter() - started < 5
    out = capsys.readouterr().out
    assert "param vertex-integrity exceeded\n" in out
    assert "param feedback-edge-set 0\n" in out


@pytest.mark.parametrize("budget", ["vertex-cover", "vertex-cover=x", "girth=3"])
def test_analyze_rejects_bad_budgets(p4, budget):
    assert main(["analyze", "--input", p4, "--budget", budget]) == EXIT_USAGE


def test_generate_from_bin_packing(tmp_path):
    ubp = tmp_path / "a.ubp"
    ubp.write_text("u ubp 2 3 3\n1 2 3\n")
    output = tmp_path / "a.ecp"
    assert main(["generate", "ubp", "--input", str(ubp), "--output", str(output)]) == EXIT_YES
    text = output.read_text()
    assert text.startswith("c generator=ubp\n")
    instance = parse_instance(text)
    assert (instance.n, instance.parts) == (8, 2)


def test_generate_random(tmp_path):
    output = tmp_path / "t.ecp"
    args = ["generate", "random", "--kind", "tree", "--seed", "3", "--n", "6", "--output", str(output)]
    assert main(args) == EXIT_YES
    expected = gen_random_instance("tree", 3, SizeParams(n=6, p=2))
    assert output.read_text() == generated_instance_text(expected, "tree", 3)


def test_generate_rejects_bad_sizes(tmp_path, capsys):
    args = ["generate", "random", "--kind", "tree", "--n", "3", "--p", "5"]
    assert main(args) == EXIT_DATA
    assert "part count" in capsys.readouterr().err


def test_bench(tmp_path, capsys):
    _write_instance(tmp_path / "k4.ecp", Instance(complete_graph(4), 2))
    _write_instance(tmp_path / "star.ecp", Instance(star_graph(3), 2))
    (tmp_path / "broken.ecp").write_text("p ecp 2 1 1\ne 1 3\n")
    manifest = tmp_path / "manifest.txt"
    manifest.write_text("# three instances\nk4.ecp\n\nstar.ecp\nbroken.ecp\n")

    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    for csv_path in (first, second):
        args = ["bench", "--manifest", str(manifest), "--csv", str(csv_path), "--no-timing"]
        assert main(args) == EXIT_YES
    assert first.read_bytes() == second.read_bytes()

    rows = [line.split(",") for line in first.read_text().splitlines()]
    assert rows[0] == list(CSV_COLUMNS)
    assert [row[5] for row in rows[1:]] == ["yes", "no", "error"]
    assert rows[3][0].endswith("broken.ecp")
    assert "algorithm" in capsys.readouterr().out


def test_bench_of_an_empty_manifest(tmp_path):
    manifest = tmp_path / "manifest.txt"
    manifest.write_text("# nothing yet\n")
    csv_path = tmp_path / "out.csv"
    assert main(["bench", "--manifest", str(manifest), "--csv", str(csv_path)]) == EXIT_YES
    assert csv_path.read_text() == ",".join(CSV_COLUMNS) + "\n"


def test_usage_errors(capsys):
    assert main([]) == EXIT_USAGE
    assert main(["solve"]) == EXIT_USAGE
    assert main(["solve", "--input", "x.ecp", "--algo", "simplex"]) == EXIT_USAGE
    assert "equipart:" in capsys.readouterr().err


def test_data_errors(tmp_path, capsys):
    broken = tmp_path / "broken.ecp"
    broken.write_text("p ecp 3 1 1\ne 1 2\n")
    assert main(["solve", "--input", str(broken)]) == EXIT_DATA
    assert main(["solve", "--input", str(tmp_path / "missing.ecp")]) == EXIT_DATA


def test_log_directory(tmp_path, p4):
    log_dir = tmp_path / "logs"
    assert main(["--log-dir", str(log_dir), "solve", "--input", p4]) == EXIT_YES
    logs = list(log_dir.glob("*.log"))
    assert len(logs) == 1
    assert "Initializing EquiPart" in logs[0].read_text()


def test_usage_errors_share_the_error_base():
    error = UsageError("--budget expects NAME=K, got x")
    assert isinstance(error, Error)
    assert str(error) == "--budget expects NAME=K, got x"
