from __future__ import annotations

import json
from dataclasses import replace

import pytest

from src.cli import main
from src.core import load_settings


@pytest.fixture
def matching_file(tmp_path):
    path = tmp_path / "matching5.json"
    code = main(["gen", "--builtin", "matching", "--players", "5", "--actions", "3", "--out", str(path)])
    assert code == 0
    return path


def run_json(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_gen_writes_builtin_game(matching_file):
    document = json.loads(matching_file.read_text(encoding="utf-8"))
    assert document["n_players"] == 5
    assert document["utility"]["kind"] == "builtin"


def test_gen_random_table(tmp_path, capsys):
    code, document = run_json(
        capsys, ["gen", "--builtin", "random", "--players", "3", "--actions", "2", "--seed", "5", "--canonical"]
    )
    assert code == 0
    assert document["utility"]["kind"] == "table"
    assert len(document["utility"]["entries"]) == 6


def test_index_of_pure_profile(matching_file, capsys):
    code, document = run_json(capsys, ["index", "--game", str(matching_file), "--profile", "pure:1", "--canonical"])
    assert code == 0
    assert document["defection_index"] == 2
    assert document["defection_index_d"] == 3
    assert [c["verdict"] for c in document["chain"]] == ["robust", "robust", "robust", "not-robust"]


def test_verify_not_robust_exits_one(matching_file, capsys):
    code, document = run_json(
        capsys, ["verify", "--game", str(matching_file), "--profile", "pure:1", "--alpha", "3", "--canonical"]
    )
    assert code == 1
    assert document["verdict"] == "not-robust"
    assert document["witness"]["config"] == [0, 3, 0]
    assert document["witness"]["deviation"] == "2"
    assert document["witness"]["gain"] == "1/1"


def test_verify_alpha_zero_on_non_nash_profile(matching_file, write_json, capsys):
    profile = write_json("profile.json", {"strategies": [["1", "0", "0"]] * 4 + [["0", "0", "1"]]})
    code, document = run_json(
        capsys, ["verify", "--game", str(matching_file), "--profile", str(profile), "--alpha", "0", "--canonical"]
    )
    assert code == 1
    assert document["witness"]["player"] == 4
    assert document["witness"]["config"] == [0, 0, 0]


def test_verify_with_oracle(matching_file, capsys):
    code, document = run_json(
        capsys,
        ["verify", "--game", str(matching_file), "--profile", "pure:1", "--alpha", "2", "--oracle", "--samples", "10"],
    )
    assert code == 0
    assert document["oracle"]["agrees"]
    assert document["oracle"]["method"] == "sampled-mixed"
    assert any(entry["stage"] == "ORACLE_CROSSCHECK" for entry in document["audit_log"])
    assert "generated_at" in document


def test_canonical_output_is_byte_stable(matching_file, capsys):
    argv = ["verify", "--game", str(matching_file), "--profile", "pure:2", "--alpha", "2", "--canonical"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    second = capsys.readouterr().out
    assert first == second
    assert "generated_at" not in first


def test_solve_reports_pure_equilibria(tmp_path, capsys):
    game = tmp_path / "matching3.json"
    main(["gen", "--builtin", "matching", "--players", "3", "--actions", "3", "--out", str(game)])
    code, document = run_json(capsys, ["solve", "--game", str(game), "--alpha", "1", "--canonical"])
    assert code == 0
    assert sorted(p["assignment"] for p in document["robust_profiles"]) == [[0, 0, 3], [0, 3, 0], [3, 0, 0]]

    code, document = run_json(capsys, ["solve", "--game", str(game), "--alpha", "2", "--canonical"])
    assert code == 1
    assert not document["found"]


def test_solve_with_dynamics(matching_file, capsys):
    code, document = run_json(
        capsys,
        ["solve", "--game", str(matching_file), "--alpha", "0", "--init", "mixed:9/10,1/20,1/20", "--canonical"],
    )
    assert code == 0
    assert document["dynamics"]["outcome"] == "converged"
    assert document["dynamics"]["final_strategy"] == ["1/1", "0/1", "0/1"]


def test_scan_writes_csv(matching_file, capsys):
    code = main(["scan", "--game", str(matching_file), "--alpha", "0", "--grid", "2"])
    lines = capsys.readouterr().out.splitlines()
    assert code == 0
    assert lines[0] == "p_1,p_2,p_3,t_size,members"
    assert len(lines) == 7
    assert lines[1] == "1/1,0/1,0/1,1,1"


def test_check_on_independent_game(tmp_path, capsys):
    game = tmp_path / "independent.json"
    main(["gen", "--builtin", "independent", "--players", "4", "--values", "1,2,3", "--out", str(game)])
    code, document = run_json(
        capsys, ["check", "--game", str(game), "--profile", "pure:1", "--alpha", "2", "--canonical"]
    )
    assert code == 0
    assert document["certified"]
    assert document["consistent"]
    assert document["sensitivity"]["anchor"] == "3"


def test_check_certified_by_sensitivity_only(matching_file, capsys):
    code, document = run_json(
        capsys, ["check", "--game", str(matching_file), "--profile", "pure:1", "--alpha", "2", "--canonical"]
    )
    assert code == 0
    assert document["sensitivity"]["anchor"] == "1"
    assert not document["direction"]["invariant"]
    assert document["consistent"]


def test_check_not_certified_exits_one(matching_file, capsys):
    code, document = run_json(
        capsys, ["check", "--game", str(matching_file), "--profile", "pure:1", "--alpha", "3", "--canonical"]
    )
    assert code == 1
    assert not document["certified"]
    assert document["robust_actions"] == []


def test_malformed_game_exits_two(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{\n  "n_players": 3,\n  oops\n}\n', encoding="utf-8")
    code = main(["verify", "--game", str(bad), "--profile", "pure:1", "--alpha", "0"])
    assert code == 2
    assert "bad.json:3:3" in capsys.readouterr().err


def test_missing_parameter_exits_two(matching_file, capsys):
    code = main(["verify", "--game", str(matching_file), "--profile", "pure:1"])
    assert code == 2
    assert "--alpha" in capsys.readouterr().err


def test_cap_exceeded_exits_two(matching_file, capsys):
    settings = load_settings()
    tight = replace(settings, solver=replace(settings.solver, max_compositions=3))
    code = main(["verify", "--game", str(matching_file), "--profile", "pure:1", "--alpha", "2"], settings=tight)
    assert code == 2
    assert "max_compositions" in capsys.readouterr().err


def test_out_file_and_index_expectation(matching_file, tmp_path, capsys):
    target = tmp_path / "index.json"
    uniform = "mixed:1/3,1/3,1/3"
    game = tmp_path / "matching3.json"
    main(["gen", "--builtin", "matching", "--players", "3", "--actions", "3", "--out", str(game)])
    code = main(
        ["index", "--game", str(game), "--profile", uniform, "--expect", "1", "--oracle", "--canonical", "--out", str(target)]
    )
    assert code == 0
    assert capsys.readouterr().out == ""
    document = json.loads(target.read_text(encoding="utf-8"))
    assert document["defection_index"] == 0
    assert document["oracle_index"] == 0
    assert document["discrepancy"] is True


def test_robust_certificate_lists_evidence_per_player(matching_file, capsys):
    code, document = run_json(
        capsys, ["verify", "--game", str(matching_file), "--profile", "pure:1", "--alpha", "2", "--canonical"]
    )
    assert code == 0
    assert document["verdict"] == "robust"
    assert [entry["player"] for entry in document["evidence"]] == [0]
    assert document["evidence"][0]["actions"] == ["1"]
    assert len(document["evidence"][0]["per_config"]) == 6
