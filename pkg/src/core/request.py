from __future__ import annotations

from typing import Any, List, Literal, Optional

from pydantic import BaseModel, Field, ValidationError, model_validator

from src.errors import InvalidParameterError

COMMANDS = ("gen", "verify", "index", "solve", "scan", "check")

_NEEDS_GAME = {"verify", "index", "solve", "scan", "check"}
_NEEDS_PROFILE = {"verify", "index", "check"}
_NEEDS_ALPHA = {"verify", "solve", "scan", "check"}


class CommandRequest(BaseModel):
    command: Literal["gen", "verify", "index", "solve", "scan", "check"]
    game: Optional[str] = None
    profile: Optional[str] = None
    alpha: Optional[int] = Field(default=None, ge=0)
    mode: Literal["exact", "numeric"] = "exact"
    tie: Literal["inclusive", "strict"] = "inclusive"
    grid: Optional[int] = Field(default=None, ge=1)
    oracle: bool = False
    samples: Optional[int] = Field(default=None, ge=0)
    seed: Optional[int] = None
    out: Optional[str] = None
    canonical: bool = False

    builtin: Optional[Literal["matching", "independent", "random"]] = None
    players: Optional[int] = None
    actions: Optional[int] = Field(default=None, ge=1)
    labels: Optional[List[str]] = None
    values: Optional[List[str]] = None
    denominator: int = Field(default=12, ge=1)
    table: bool = False

    init: Optional[str] = None
    damping: Optional[str] = None
    max_iters: Optional[int] = Field(default=None, ge=1)
    selection: Optional[Literal["uniform", "lowest-index"]] = None

    base_config: Optional[List[int]] = None
    tolerance: Optional[str] = None
    expect: Optional[int] = None

    @model_validator(mode="after")
    def _check_command(self) -> "CommandRequest":
        missing = []
        if self.command in _NEEDS_GAME and not self.game:
            missing.append("--game")
        if self.command in _NEEDS_PROFILE and not self.profile:
            missing.append("--profile")
        if self.command in _NEEDS_ALPHA and self.alpha is None:
            missing.append("--alpha")
        if self.command == "gen":
            if self.builtin is None:
                missing.append("--builtin")
            if self.players is None:
                missing.append("--players")
            if self.builtin == "independent" and not self.values:
                missing.append("--values")
            if self.builtin in ("matching", "random") and self.actions is None:
                missing.append("--actions")
        if missing:
            raise ValueError(f"{self.command} needs {', '.join(missing)}")
        return self

    @property
    def numeric(self) -> bool:
        return self.mode == "numeric"


def build_request(**fields: Any) -> CommandRequest:
    try:
        return CommandRequest(**fields)
    except ValidationError as exc:
        messages = []
        for err in exc.errors():
            loc = ".".join(str(p) for p in err.get("loc", ()))
            msg = str(err.get("msg", "")).removeprefix("Value error, ")
            messages.append(f"{loc}: {msg}" if loc else msg)
        raise InvalidParameterError("; ".join(messages)) from exc
