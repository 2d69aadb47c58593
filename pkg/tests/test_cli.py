import json
from fractions import Fraction

import pytest

from graphchords.cli import main
from graphchords.serialization import function_to_json, graph_to_json, certificate_to_json
from graphchords import StepFunction, construct_partition_1k

F = Fraction


@pytest.fixture
def theta_files(tmp_path, theta):
    graph_path = tmp_path / "g.json"
    graph_path.write_text(json.dumps(graph_to_json(theta)))
    f = StepFunction.from_edge_values(theta, {"a": 1, "b": -1, "c": 0})
    f_path = tmp_path / "f.json"
    f_path.write_text(json.dumps(function_to_json(f)))
    return graph_path, f_path


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip() else None


def test_necklace(capsys):
    code, data = run_cli(capsys, "necklace", "BBWW")
    assert code == 0
    assert data == {"window": [2, 3], "cuts": [1, 3]}


def test_necklace_bad_input(capsys):
    code = main(["necklace", "BBBW"])
    assert code == 2


def test_double_cover_triangle(tmp_path, capsys, triangle):
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps(graph_to_json(triangle)))
    code, data = run_cli(capsys, "double-cover", "--graph", str(path))
    assert code == 0
    assert data == [[["a", "+"], ["b", "+"], ["c", "+"]]] * 2


def test_solve_theta(theta_files, capsys):
    graph_path, f_path = theta_files
    code, data = run_cli(capsys, "solve", "--graph", str(graph_path), "--f", str(f_path), "--r", "1/2")
    assert code == 0
    assert data["integral"] == "0"
    assert data["measure"] == "1/2"
    assert len(data["cover"]) >= 1


def test_interval(tmp_path, capsys):
    f_path = tmp_path / "f.json"
    f_path.write_text(json.dumps([
        {"from": "0", "to": "1/2", "value": "2"},
        {"from": "1/2", "to": "1", "value": "0"},
    ]))
    code, data = run_cli(capsys, "interval", "--f", str(f_path), "--r", "1/2")
    assert code == 0
    assert data == {"interval": ["1/4", "3/4"], "achieved": "1/2"}


def test_partition_verify(tmp_path, capsys, triangle):
    graph_path = tmp_path / "g.json"
    graph_path.write_text(json.dumps(graph_to_json(triangle)))
    cert = construct_partition_1k(triangle, 2)
    cert_path = tmp_path / "cert.json"
    cert_path.write_text(json.dumps(certificate_to_json(cert)))
    code, data = run_cli(capsys, "partition-verify", "--graph", str(graph_path), "--cert", str(cert_path))
    assert code == 0
    assert data == {"valid": True}


def test_evidence(theta_files, capsys):
    graph_path, _ = theta_files
    code, data = run_cli(capsys, "evidence", "--graph", str(graph_path), "--r", "1/2", "--trials", "3")
    assert code == 0
    assert data["successes"] == 3


def test_precondition_exit_code(theta_files, capsys):
    graph_path, f_path = theta_files
    code = main(["solve", "--graph", str(graph_path), "--f", str(f_path), "--r", "3/2"])
    assert code == 2


def test_usage_exit_code():
    assert main(["no-such-command"]) == 64


def test_round_trip_exactness(theta_files, capsys, theta):
    graph_path, f_path = theta_files
    code, data = run_cli(capsys, "solve", "--graph", str(graph_path), "--f", str(f_path), "--r", "1/3")
    assert code == 0
    from graphchords.serialization import subset_from_json

    subset = subset_from_json(theta, data["subset"])
    assert subset.measure() == F(1, 3)
