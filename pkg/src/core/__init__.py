from .config import Settings, SolverSettings, load_settings
from .request import COMMANDS, CommandRequest, build_request
from .state import LogEntry, RunState

__all__ = [
    "COMMANDS",
    "CommandRequest",
    "LogEntry",
    "RunState",
    "Settings",
    "SolverSettings",
    "build_request",
    "load_settings",
]
