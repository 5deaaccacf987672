from __future__ import annotations

from typing import Any, Dict, List, TypedDict


class LogEntry(TypedDict):
    stage: str
    action: str
    detail: Dict[str, Any]


class RunState(TypedDict, total=False):
    run_id: str
    command: str
    request: Dict[str, Any]

    game: Any
    validation: Dict[str, Any]
    profile: Any
    result: Dict[str, Any]
    oracle: Dict[str, Any]
    rendered: str

    outcome: str
    status: str
    logs: List[LogEntry]
