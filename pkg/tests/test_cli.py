"""Command-line behavior: subcommands, JSON output, exit codes, pipelines."""

from __future__ import annotations

import json

import pytest

from cyberseg import AttackSet, Device, Graph, Instance, save_instance
from cyberseg.cli import run


def invoke(capsys, argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io
        import sys

        assert monkeypatch is not None
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = run(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def path_instance(tmp_path):
    """Labeled three-device chain u-x-w with x attacked."""
    inst = Instance(
        Graph([Device(0, "u"), Device(1, "x"), Device(2, "w")], [(0, 1), (1, 2)]),
        AttackSet([1]),
    )
    target = tmp_path / "path.json"
    save_instance(inst, target)
    return str(target)


class TestGen:
    def test_tree_instance_document(self, capsys):
        code, out, err = invoke(
            capsys, ["gen", "--tree", "50", "--branching", "5", "--p", "0.25", "--seed", "7"]
        )
        assert code == 0
        doc = json.loads(out)
        assert len(doc["devices"]) == 50
        assert len(doc["connections"]) == 49
        assert len(doc["attacked"]) == 12

    def test_karate_source(self, capsys):
        code, out, _ = invoke(capsys, ["gen", "--karate", "--p", "0.1", "--seed", "1"])
        assert code == 0
        doc = json.loads(out)
        assert len(doc["devices"]) == 34 and len(doc["attacked"]) == 3

    def test_topology_required(self, capsys):
        code, out, _ = invoke(capsys, ["gen", "--p", "0.1"])
        assert code == 1
        assert json.loads(out)["error"] == "usage"

    def test_out_file(self, capsys, tmp_path):
        target = tmp_path / "inst.json"
        code, _, _ = invoke(capsys, ["gen", "--tree", "6", "--out", str(target)])
        assert code == 0
        assert len(json.loads(target.read_text())["devices"]) == 6


class TestScore:
    def test_bundled_karate_with_three_attacked(self, capsys, tmp_path, monkeypatch):
        code, out, _ = invoke(capsys, ["gen", "--karate", "--p", "0.1", "--seed", "3"])
        inst_text = out
        code, out, _ = invoke(capsys, ["score", "--stdin"], stdin=inst_text, monkeypatch=monkeypatch)
        assert code == 0
        report = json.loads(out)["report"]
        assert report["vulnerability"] == 96
        assert report["healthiness"] == 465

    def test_isolate_cut(self, capsys, path_instance):
        code, out, _ = invoke(capsys, ["score", "--instance", path_instance, "--isolate", "1"])
        assert code == 0
        doc = json.loads(out)
        assert doc["isolate"] == [1]
        assert doc["report"]["vulnerability"] == 0
        assert [c["devices"] for c in doc["components"]] == [[0], [2]]

    def test_unknown_isolate_id_is_data_error(self, capsys, path_instance):
        code, out, _ = invoke(capsys, ["score", "--instance", path_instance, "--isolate", "9"])
        assert code == 2
        assert json.loads(out)["error"] == "data"


class TestSolve:
    def test_direct_cuts_the_attacked_middle(self, capsys, path_instance):
        code, out, _ = invoke(capsys, ["solve", "--instance", path_instance, "--k", "1", "--algo", "direct"])
        assert code == 0
        doc = json.loads(out)
        assert doc["chosen"] == [1]
        assert doc["chosen_labels"] == ["x"]
        assert doc["report"]["vulnerability"] == 0
        assert doc["status"] == "optimal"

    def test_missing_budget_is_usage_error(self, capsys, path_instance):
        code, out, _ = invoke(capsys, ["solve", "--instance", path_instance])
        assert code == 1

    def test_stdin_pipeline_equals_file(self, capsys, tmp_path, monkeypatch):
        code, gen_out, _ = invoke(capsys, ["gen", "--tree", "20", "--branching", "3", "--p", "0.25", "--seed", "5"])
        target = tmp_path / "inst.json"
        target.write_text(gen_out)
        code1, from_file, _ = invoke(capsys, ["solve", "--instance", str(target), "--k", "2"])
        code2, from_stdin, _ = invoke(
            capsys, ["solve", "--stdin", "--k", "2"], stdin=gen_out, monkeypatch=monkeypatch
        )
        assert code1 == code2 == 0
        a, b = json.loads(from_file), json.loads(from_stdin)
        a.pop("elapsed_seconds"), b.pop("elapsed_seconds")
        assert a == b

    def test_greedy_with_chunk_at_budget_matches_direct(self, capsys, tmp_path, monkeypatch):
        _, gen_out, _ = invoke(capsys, ["gen", "--tree", "30", "--branching", "4", "--p", "0.25", "--seed", "11"])
        _, direct, _ = invoke(capsys, ["solve", "--stdin", "--k", "3", "--algo", "direct"], stdin=gen_out, monkeypatch=monkeypatch)
        _, greedy, _ = invoke(
            capsys,
            ["solve", "--stdin", "--k", "3", "--algo", "greedy", "--x", "3"],
            stdin=gen_out,
            monkeypatch=monkeypatch,
        )
        d, g = json.loads(direct), json.loads(greedy)
        assert g["chosen"] == d["chosen"]
        assert g["report"] == d["report"]

    def test_oracle_algo(self, capsys, path_instance):
        code, out, _ = invoke(capsys, ["solve", "--instance", path_instance, "--k", "1", "--algo", "oracle"])
        assert code == 0
        assert json.loads(out)["report"]["vulnerability"] == 0

    def test_timeout_produces_exit_three(self, capsys, tmp_path, monkeypatch):
        import io
        import sys

        edges = [[i, (i + 1) % 48] for i in range(48)] + [[i, (i + 5) % 48] for i in range(48)]
        doc = {"devices": list(range(48)), "connections": edges, "attacked": list(range(6))}
        monkeypatch.setattr(sys, "stdin", io.StringIO(json.dumps(doc)))
        code, out, _ = invoke(capsys, ["solve", "--stdin", "--k", "5", "--timeout", "0.1"])
        assert code == 3
        assert json.loads(out)["status"] == "timeout_best_effort"

    def test_budget_falls_back_to_instance(self, capsys, tmp_path):
        inst = Instance(Graph([0, 1], [(0, 1)]), AttackSet([0]), budget=1)
        target = tmp_path / "b.json"
        save_instance(inst, target)
        code, out, _ = invoke(capsys, ["solve", "--instance", str(target)])
        assert code == 0
        assert json.loads(out)["k"] == 1


class TestIlpCommands:
    def test_export_then_validate_certifies_direct_solution(self, capsys, tmp_path, path_instance):
        lp_path = tmp_path / "model.lp"
        code, out, _ = invoke(
            capsys, ["export-ilp", "--instance", path_instance, "--k", "1", "--out", str(lp_path)]
        )
        assert code == 0
        summary = json.loads(out)
        assert summary["variables"] == 3 + 3
        lp_text = lp_path.read_text()
        assert "Minimize" in lp_text and "Binary" in lp_text

        _, solve_out, _ = invoke(capsys, ["solve", "--instance", path_instance, "--k", "1"])
        chosen = set(json.loads(solve_out)["chosen"])
        asg_path = tmp_path / "solution.txt"
        asg_path.write_text("".join(f"v_{i} {1 if i in chosen else 0}\n" for i in range(3)))

        code, out, _ = invoke(
            capsys,
            ["validate-ilp", "--instance", path_instance, "--k", "1", "--assignment", str(asg_path)],
        )
        assert code == 0
        report = json.loads(out)
        assert report["violated_constraints"] == []
        assert report["objective_gap"] == 0
        assert report["certified"] is True

    def test_export_without_out_prints_lp(self, capsys, path_instance):
        code, out, _ = invoke(capsys, ["export-ilp", "--instance", path_instance, "--k", "1"])
        assert code == 0
        assert out.startswith("Minimize")

    def test_missing_assignment_file_is_data_error(self, capsys, path_instance):
        code, out, _ = invoke(
            capsys,
            ["validate-ilp", "--instance", path_instance, "--k", "1", "--assignment", "/nope.txt"],
        )
        assert code == 2


class TestErrors:
    def test_unknown_flag_is_usage_error(self, capsys):
        code, out, _ = invoke(capsys, ["score", "--frobnicate"])
        assert code == 1
        assert json.loads(out)["error"] == "usage"

    def test_unreadable_instance_is_data_error(self, capsys):
        code, out, _ = invoke(capsys, ["score", "--instance", "/does/not/exist.json"])
        assert code == 2

    def test_no_subcommand_is_usage_error(self, capsys):
        assert invoke(capsys, [])[0] == 1


def test_console_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "cyberseg.cli", "gen", "--tree", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["devices"]) == 3
