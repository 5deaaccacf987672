from __future__ import annotations

import copy
import json
from dataclasses import replace
from fractions import Fraction

import pytest
import yaml

from src.core import build_request, load_settings
from src.core.config import Settings, _resolve_config_refs
from src.core.graph import _evaluate_trigger, build_graph
from src.core.workflow import PipelineRunner
from src.errors import ConfigurationError, InvalidGameError, InvalidParameterError


@pytest.fixture
def solver_yaml(tmp_path):
    def write(block) -> str:
        path = tmp_path / "solver.yaml"
        path.write_text(yaml.safe_dump({"solver": block}), encoding="utf-8")
        return str(path)

    return write


def test_default_settings(monkeypatch):
    monkeypatch.delenv("ROBUSTEQ_MAX_COMPOSITIONS", raising=False)
    settings = load_settings()
    assert settings.solver.max_compositions == 100_000
    assert settings.solver.damping == Fraction(1, 2)
    assert settings.solver.selection_rule == "uniform"
    assert settings.pipeline("verify")[-1] == "EMIT"


def test_env_overrides_cap(monkeypatch):
    monkeypatch.setenv("ROBUSTEQ_MAX_COMPOSITIONS", "250")
    assert load_settings().solver.max_compositions == 250


def test_config_refs():
    env = {"A": "1"}
    assert _resolve_config_refs({"x": "{{A|5}}", "y": ["{{B|7}}", "{{C}}"]}, env) == {
        "x": "1",
        "y": ["7", "{{C}}"],
    }


def test_unresolved_reference_is_rejected(solver_yaml):
    with pytest.raises(ConfigurationError, match="unresolved"):
        load_settings(solver_path=solver_yaml({"max_iters": "{{ROBUSTEQ_UNSET_ITERS}}"}))


@pytest.mark.parametrize(
    "block",
    [
        {"selection_rule": "random"},
        {"damping": "3/2"},
        {"grid_resolution": 0},
        {"unknown_knob": 1},
        {"max_iters": "many"},
    ],
)
def test_bad_solver_settings(solver_yaml, block):
    with pytest.raises(ConfigurationError):
        load_settings(solver_path=solver_yaml(block))


def test_unknown_pipeline():
    with pytest.raises(ConfigurationError):
        load_settings().pipeline("serve")


def test_unknown_stage_is_rejected():
    settings = load_settings()
    workflow = copy.deepcopy(settings.workflow)
    workflow["pipelines"]["verify"]["stages"].insert(1, "PUBLISH")
    with pytest.raises(ConfigurationError, match="PUBLISH"):
        build_graph(Settings(workflow=workflow, solver=settings.solver), "verify")


def test_pipeline_must_end_with_emit():
    settings = load_settings()
    workflow = copy.deepcopy(settings.workflow)
    workflow["pipelines"]["scan"]["stages"] = ["LOAD_GAME", "GRID_SCAN"]
    with pytest.raises(ConfigurationError):
        build_graph(Settings(workflow=workflow, solver=settings.solver), "scan")


def test_trigger_expressions():
    state = {"request": {"oracle": True, "init": None}}
    assert _evaluate_trigger("request.oracle == 'True'", state)
    assert not _evaluate_trigger("request.init != ''", state)
    assert not _evaluate_trigger(None, state)
    with pytest.raises(ConfigurationError):
        _evaluate_trigger("request.oracle", state)


def test_request_requires_command_flags():
    with pytest.raises(InvalidParameterError, match="--profile"):
        build_request(command="index", game="g.json")
    with pytest.raises(InvalidParameterError, match="--values"):
        build_request(command="gen", builtin="independent", players=3)
    with pytest.raises(InvalidParameterError):
        build_request(command="verify", game="g.json", profile="pure:1", alpha=-1)


def _stages(state):
    return [entry["stage"] for entry in state["logs"]]


def test_verify_skips_oracle_unless_requested(tmp_path):
    game = tmp_path / "matching.json"
    game.write_text(
        json.dumps({"n_players": 3, "actions": ["1", "2"], "utility": {"kind": "builtin", "name": "matching"}}),
        encoding="utf-8",
    )
    runner = PipelineRunner(load_settings())
    plain = runner.run(build_request(command="verify", game=str(game), profile="pure:1", alpha=1))
    assert "ORACLE_CROSSCHECK" not in _stages(plain)
    assert plain["outcome"] == "ok"

    checked = runner.run(build_request(command="verify", game=str(game), profile="pure:1", alpha=1, oracle=True))
    assert "ORACLE_CROSSCHECK" in _stages(checked)
    assert checked["oracle"]["agrees"]


def test_invalid_game_reaches_emit_and_fails(tmp_path):
    game = tmp_path / "partial.json"
    game.write_text(
        json.dumps(
            {
                "n_players": 2,
                "actions": ["a", "b"],
                "utility": {"kind": "table", "entries": [{"action": "a", "freq": [2, 0], "value": "1"}]},
            }
        ),
        encoding="utf-8",
    )
    runner = PipelineRunner(load_settings())
    with pytest.raises(InvalidGameError, match="summing to 1"):
        runner.run(build_request(command="verify", game=str(game), profile="pure:a", alpha=0))


def test_solver_epsilon_reaches_numeric_games(tmp_path):
    game = tmp_path / "matching.json"
    game.write_text(
        json.dumps({"n_players": 5, "actions": ["1", "2", "3"], "utility": {"kind": "builtin", "name": "matching"}}),
        encoding="utf-8",
    )
    settings = load_settings()
    request = build_request(command="verify", game=str(game), profile="pure:1", alpha=3, mode="numeric")

    strict = PipelineRunner(settings).run(request)
    assert strict["game"].tolerance == settings.solver.epsilon
    assert strict["outcome"] == "negative"

    loosened = Settings(workflow=settings.workflow, solver=replace(settings.solver, epsilon=1.0))
    loose = PipelineRunner(loosened).run(request)
    assert loose["game"].tolerance == 1.0
    assert loose["outcome"] == "ok"


def test_unused_oracle_cap_is_not_a_setting(solver_yaml):
    assert not hasattr(load_settings().solver, "oracle_max_pure_profiles")
    with pytest.raises(ConfigurationError):
        load_settings(solver_path=solver_yaml({"oracle_max_pure_profiles": 10}))


def test_emit_log_records_run_id(tmp_path):
    game = tmp_path / "matching.json"
    game.write_text(
        json.dumps({"n_players": 3, "actions": ["1", "2"], "utility": {"kind": "builtin", "name": "matching"}}),
        encoding="utf-8",
    )
    runner = PipelineRunner(load_settings())
    state = runner.run(build_request(command="index", game=str(game), profile="pure:1"), run_id="run_fixed")
    render = [entry for entry in state["logs"] if entry["stage"] == "EMIT" and entry["action"] == "render"]
    assert render[0]["detail"]["run_id"] == "run_fixed"
    assert "workflow_name" not in state
