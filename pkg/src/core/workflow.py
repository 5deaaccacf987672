from __future__ import annotations

from typing import Any, Dict, Optional

from src.core.config import Settings
from src.core.graph import build_graph, create_initial_state
from src.core.request import CommandRequest
from src.core.state import RunState


class PipelineRunner:
    def __init__(self, settings: Settings) -> None:
        self.settings = settings
        self._graphs: Dict[str, Any] = {}

    def graph_for(self, command: str):
        if command not in self._graphs:
            self._graphs[command] = build_graph(self.settings, command)
        return self._graphs[command]

    def run(self, request: CommandRequest, run_id: Optional[str] = None) -> RunState:
        state = create_initial_state(request, run_id=run_id)
        return self.graph_for(request.command).invoke(state)
