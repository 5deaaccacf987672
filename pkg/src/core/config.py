from __future__ import annotations

import json
import os
import re
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional

import yaml
from dotenv import load_dotenv

from src.errors import ConfigurationError
from src.search import SELECTION_RULES

ROOT = Path(__file__).resolve().parents[2]
DEFAULT_WORKFLOW_PATH = ROOT / "configs" / "workflow.json"
DEFAULT_SOLVER_PATH = ROOT / "configs" / "solver.yaml"

_REF = re.compile(r"^\{\{\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\|(.*))?\}\}$")


@dataclass
class SolverSettings:
    epsilon: float = 1e-9
    simplex_tolerance: float = 1e-12
    convergence_tolerance: float = 1e-10
    max_compositions: int = 100_000
    oracle_max_profiles: int = 1_000_000
    damping: Fraction = Fraction(1, 2)
    max_iters: int = 200
    selection_rule: str = "uniform"
    grid_resolution: int = 6
    oracle_samples: int = 100
    seed: int = 7
    sample_denominator: int = 1000


@dataclass
class Settings:
    workflow: Dict[str, Any]
    solver: SolverSettings = field(default_factory=SolverSettings)

    def pipeline(self, command: str) -> list:
        pipelines = self.workflow.get("pipelines", {})
        if command not in pipelines:
            raise ConfigurationError(f"No pipeline named '{command}'. Known: {sorted(pipelines)}")
        return list(pipelines[command].get("stages", []))


def _load_json(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigurationError(f"Cannot load {path}: {exc}") from exc


def _load_yaml(path: Path) -> Dict[str, Any]:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return yaml.safe_load(handle) or {}
    except (OSError, yaml.YAMLError) as exc:
        raise ConfigurationError(f"Cannot load {path}: {exc}") from exc


def _resolve_config_refs(obj: Any, env: Dict[str, str]) -> Any:
    if isinstance(obj, dict):
        return {k: _resolve_config_refs(v, env) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_resolve_config_refs(v, env) for v in obj]
    if isinstance(obj, str):
        match = _REF.match(obj.strip())
        if match:
            key, default = match.groups()
            if key in env:
                return env[key]
            return default.strip() if default is not None else obj
    return obj


def _coerce(name: str, value: Any, default: Any) -> Any:
    if isinstance(value, str) and value.startswith("{{"):
        raise ConfigurationError(f"solver.{name}: unresolved reference {value}")
    try:
        if isinstance(default, Fraction):
            result: Any = Fraction(str(value))
        elif isinstance(default, bool):
            result = bool(value)
        elif isinstance(default, int):
            result = int(str(value).replace("_", ""))
        elif isinstance(default, float):
            result = float(value)
        else:
            result = str(value)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"solver.{name}: cannot use {value!r}") from exc
    return result


def _solver_settings(raw: Dict[str, Any]) -> SolverSettings:
    defaults = SolverSettings()
    known = {f.name for f in fields(SolverSettings)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise ConfigurationError(f"Unknown solver settings: {unknown}")
    values = {name: _coerce(name, value, getattr(defaults, name)) for name, value in raw.items()}
    solver = SolverSettings(**values)

    for name in ("max_compositions", "oracle_max_profiles", "max_iters",
                 "grid_resolution", "sample_denominator"):
        if getattr(solver, name) < 1:
            raise ConfigurationError(f"solver.{name} must be >= 1, got {getattr(solver, name)}")
    if solver.oracle_samples < 0:
        raise ConfigurationError(f"solver.oracle_samples must be >= 0, got {solver.oracle_samples}")
    if not 0 < solver.damping <= 1:
        raise ConfigurationError(f"solver.damping must lie in (0, 1], got {solver.damping}")
    if solver.selection_rule not in SELECTION_RULES:
        raise ConfigurationError(
            f"solver.selection_rule must be one of {sorted(SELECTION_RULES)}, got {solver.selection_rule!r}"
        )
    for name in ("epsilon", "simplex_tolerance", "convergence_tolerance"):
        if getattr(solver, name) <= 0:
            raise ConfigurationError(f"solver.{name} must be positive")
    return solver


def load_settings(
    workflow_path: Optional[str] = None,
    solver_path: Optional[str] = None,
) -> Settings:
    load_dotenv()
    env = dict(os.environ)

    workflow_path = workflow_path or env.get("WORKFLOW_CONFIG") or str(DEFAULT_WORKFLOW_PATH)
    solver_path = solver_path or env.get("SOLVER_CONFIG") or str(DEFAULT_SOLVER_PATH)

    workflow = _load_json(Path(workflow_path))
    workflow = _resolve_config_refs(workflow, env)

    solver_cfg = _resolve_config_refs(_load_yaml(Path(solver_path)), env)
    solver = _solver_settings(solver_cfg.get("solver", {}))

    return Settings(workflow=workflow, solver=solver)
