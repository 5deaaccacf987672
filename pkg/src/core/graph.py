from __future__ import annotations

import re
import uuid
from typing import Any, Callable, Dict, List, Optional

from langgraph.graph import END, StateGraph

from src.core.config import Settings
from src.core.request import CommandRequest
from src.core.state import RunState
from src.errors import ConfigurationError
from src.nodes import NodeDeps, SolverNodes

_TRIGGER = re.compile(r"^\s*([\w\.]+)\s*(==|!=)\s*(['\"])(.*?)\3\s*$")


def build_deps(settings: Settings) -> NodeDeps:
    return NodeDeps(
        settings=settings,
        solver=settings.solver,
        limit=settings.solver.max_compositions,
    )


def _deep_get(data: Dict[str, Any], path: str) -> Optional[Any]:
    current: Any = data
    for part in path.split("."):
        if isinstance(current, dict) and part in current:
            current = current[part]
        else:
            return None
    return current


def _evaluate_trigger(expr: Optional[str], state: RunState) -> bool:
    if not expr:
        return False
    match = _TRIGGER.match(expr)
    if not match:
        raise ConfigurationError(f"Cannot parse trigger_condition {expr!r}")
    path, op, _, literal = match.groups()
    value = _deep_get(state, path)
    if value is None:
        return False
    if op == "==":
        return str(value) == literal
    return str(value) != literal


def validation_router(next_stage: str) -> Callable[[RunState], str]:
    def route(state: RunState) -> str:
        if not state.get("validation", {}).get("valid", False):
            return "EMIT"
        return next_stage

    return route


def trigger_router(expr: Optional[str], next_stage: str, skip_to: str) -> Callable[[RunState], str]:
    def route(state: RunState) -> str:
        return next_stage if _evaluate_trigger(expr, state) else skip_to

    return route


def build_graph(settings: Settings, command: str):
    nodes = SolverNodes(build_deps(settings))

    builder = StateGraph(RunState)
    stage_handlers = {
        "GENERATE": nodes.generate,
        "LOAD_GAME": nodes.load_game,
        "VALIDATE_GAME": nodes.validate_game,
        "LOAD_PROFILE": nodes.load_profile,
        "CERTIFY": nodes.certify,
        "ORACLE_CROSSCHECK": nodes.oracle_crosscheck,
        "INDEX": nodes.index,
        "PURE_SEARCH": nodes.pure_search,
        "BR_DYNAMICS": nodes.br_dynamics,
        "GRID_SCAN": nodes.grid_scan,
        "SUFFICIENCY": nodes.sufficiency,
        "EMIT": nodes.emit,
    }

    stages = settings.workflow.get("stages", [])
    stage_by_id = {stage.get("id"): stage for stage in stages if stage.get("id")}
    stage_ids: List[str] = settings.pipeline(command)
    if not stage_ids or stage_ids[-1] != "EMIT":
        raise ConfigurationError(f"Pipeline '{command}' must end with EMIT, got {stage_ids}")

    for stage_id in stage_ids:
        handler = stage_handlers.get(stage_id)
        if handler is None:
            raise ConfigurationError(f"Missing handler for stage '{stage_id}'")
        builder.add_node(stage_id, handler)

    builder.set_entry_point(stage_ids[0])

    for idx, stage_id in enumerate(stage_ids):
        if stage_id == "EMIT":
            builder.add_edge("EMIT", END)
            continue
        next_stage = stage_ids[idx + 1]
        if stage_id == "VALIDATE_GAME":
            builder.add_conditional_edges("VALIDATE_GAME", validation_router(next_stage))
            continue
        trigger = stage_by_id.get(next_stage, {}).get("trigger_condition")
        if trigger and next_stage != "EMIT":
            builder.add_conditional_edges(stage_id, trigger_router(trigger, next_stage, stage_ids[idx + 2]))
            continue
        builder.add_edge(stage_id, next_stage)

    return builder.compile()


def create_initial_state(request: CommandRequest, run_id: Optional[str] = None) -> RunState:
    run_id = run_id or f"run_{uuid.uuid4().hex[:10]}"
    return {
        "run_id": run_id,
        "command": request.command,
        "request": request.model_dump(),
        "outcome": "ok",
        "status": "NEW",
        "logs": [],
    }
