from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Annotated, Any, Dict, List, Literal, Mapping, Optional, Tuple, Union

from pydantic import BaseModel, Field, StrictFloat, StrictInt, StrictStr, ValidationError

from src.errors import (
    ConflictingEntryError,
    IncompleteTableError,
    InvalidDimensionError,
    InvalidGameError,
    InvalidStrategyError,
    MalformedInputError,
    UnknownActionError,
)
from src.game.compositions import DEFAULT_MAX_COMPOSITIONS, enumerate_compositions
from src.game.generators import make_matching_game
from src.game.model import ActionSet, FrequencyVector, Game, MixedStrategy, Profile
from src.game.numbers import NUMERIC_EPSILON, SIMPLEX_TOLERANCE, Number, format_rational, parse_rational
from src.game.validation import validate_game

logger = logging.getLogger(__name__)


class TableEntry(BaseModel):
    action: str
    freq: List[int]
    value: Union[StrictStr, StrictInt, StrictFloat]


class TableUtility(BaseModel):
    kind: Literal["table"]
    entries: List[TableEntry]


class BuiltinUtility(BaseModel):
    kind: Literal["builtin"]
    name: Literal["matching"]
    tie_rule: Literal["inclusive", "strict"] = "inclusive"


class GameFile(BaseModel):
    n_players: int
    actions: List[str]
    utility: Annotated[Union[TableUtility, BuiltinUtility], Field(discriminator="kind")]


class ProfileFile(BaseModel):
    symmetric: Optional[List[Union[StrictStr, StrictInt, StrictFloat]]] = None
    strategies: Optional[List[List[Union[StrictStr, StrictInt, StrictFloat]]]] = None


def _validation_message(exc: ValidationError) -> str:
    parts = []
    for err in exc.errors():
        loc = ".".join(str(p) for p in err.get("loc", ()))
        parts.append(f"{loc or '<root>'}: {err.get('msg')}")
    return "; ".join(parts)


def _read_json(path: Union[str, Path]) -> Any:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise MalformedInputError(f"cannot read file ({exc.strerror})", str(path)) from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInputError(exc.msg, f"{path}:{exc.lineno}:{exc.colno}") from exc


def parse_game_file(data: Any, reference: str = "<game>") -> GameFile:
    if isinstance(data, GameFile):
        return data
    try:
        return GameFile.model_validate(data)
    except ValidationError as exc:
        raise MalformedInputError(_validation_message(exc), reference) from exc


def make_table_game(
    spec: Union[GameFile, Mapping[str, Any]],
    numeric: bool = False,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
    epsilon: float = NUMERIC_EPSILON,
) -> Game:
    parsed = parse_game_file(spec)
    labels = tuple(parsed.actions)
    if isinstance(parsed.utility, BuiltinUtility):
        return make_matching_game(
            parsed.n_players,
            len(labels),
            tie_rule=parsed.utility.tie_rule,
            labels=labels,
            numeric=numeric,
            limit=limit,
            epsilon=epsilon,
        )

    actions = ActionSet(labels)
    m = len(labels)
    crowd = parsed.n_players - 1
    utility: Dict[Tuple[int, FrequencyVector], Number] = {}
    structural: List[str] = []
    for i, entry in enumerate(parsed.utility.entries):
        where = f"utility.entries[{i}]"
        try:
            action = actions.index(entry.action)
        except UnknownActionError as exc:
            raise MalformedInputError(str(exc), where) from exc
        try:
            freq = FrequencyVector(tuple(entry.freq))
        except InvalidDimensionError as exc:
            raise MalformedInputError(str(exc), where) from exc
        if len(freq) != m or freq.total != crowd:
            structural.append(
                f"{where}: freq {list(entry.freq)} must have {m} parts summing to {crowd}"
            )
            continue
        value = parse_rational(entry.value, numeric=numeric, where=f"{where}.value")
        key = (action, freq)
        if key in utility and utility[key] != value:
            raise ConflictingEntryError(
                f"(action {entry.action}, f={freq})",
                format_rational(utility[key]),
                format_rational(value),
            )
        utility[key] = value
    if structural:
        raise InvalidGameError(structural)

    if m and crowd >= 0:
        missing = [
            f"(action {labels[a]}, f={freq})"
            for freq in enumerate_compositions(crowd, m, limit)
            for a in range(m)
            if (a, freq) not in utility
        ]
        if missing:
            raise IncompleteTableError(missing)

    game = Game(
        n_players=parsed.n_players, actions=actions, utility=utility, numeric=numeric, epsilon=epsilon
    )
    report = validate_game(game, limit)
    if not report.valid:
        raise InvalidGameError(report.violations)
    logger.debug("table game N=%d m=%d with %d entries", game.n_players, m, len(utility))
    return game


def load_game(
    path: Union[str, Path],
    numeric: bool = False,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
    epsilon: float = NUMERIC_EPSILON,
) -> Game:
    data = _read_json(path)
    return make_table_game(parse_game_file(data, str(path)), numeric=numeric, limit=limit, epsilon=epsilon)


def dump_game(game: Game, as_table: bool = False) -> Dict[str, Any]:
    document: Dict[str, Any] = {
        "n_players": game.n_players,
        "actions": list(game.actions.labels),
    }
    if game.builtin and not as_table:
        document["utility"] = {"kind": "builtin", **game.builtin}
        return document
    entries = [
        {"action": game.label(action), "freq": freq.as_list(), "value": format_rational(value)}
        for (action, freq), value in sorted(
            game.utility.items(), key=lambda item: (item[0][0], item[0][1].sort_key())
        )
    ]
    document["utility"] = {"kind": "table", "entries": entries}
    return document


def parse_strategy(
    values: List[Any],
    game: Game,
    where: str = "strategy",
    simplex_tolerance: float = SIMPLEX_TOLERANCE,
) -> MixedStrategy:
    if len(values) != game.m:
        raise InvalidDimensionError(f"{where}: expected {game.m} probabilities, got {len(values)}")
    probs = tuple(
        parse_rational(v, numeric=game.numeric, where=f"{where}[{i}]") for i, v in enumerate(values)
    )
    if game.numeric:
        total = sum(probs)
        if any(p < 0 for p in probs) or total <= 0 or abs(total - 1) > simplex_tolerance:
            raise InvalidStrategyError(
                f"{where}: probabilities sum to {total}, not 1 within {simplex_tolerance}"
            )
        probs = tuple(p / total for p in probs)
    return MixedStrategy(probs)


def parse_profile_spec(spec: str, game: Game, simplex_tolerance: float = SIMPLEX_TOLERANCE) -> Profile:
    """``pure:<label>``, ``mixed:p1,p2,...`` or a path to a JSON profile file."""
    text = spec.strip()
    if text.startswith("pure:"):
        action = game.action_index(text[len("pure:") :])
        return Profile.symmetric_of(MixedStrategy.pure(game.m, action, game.numeric))
    if text.startswith("mixed:"):
        values = [v for v in text[len("mixed:") :].split(",")]
        return Profile.symmetric_of(parse_strategy(values, game, "mixed", simplex_tolerance))

    data = _read_json(text)
    try:
        parsed = ProfileFile.model_validate(data)
    except ValidationError as exc:
        raise MalformedInputError(_validation_message(exc), text) from exc
    if (parsed.symmetric is None) == (parsed.strategies is None):
        raise MalformedInputError("profile file needs exactly one of 'symmetric' or 'strategies'", text)
    if parsed.symmetric is not None:
        return Profile.symmetric_of(
            parse_strategy(list(parsed.symmetric), game, "symmetric", simplex_tolerance)
        )
    return Profile.of(
        [
            parse_strategy(list(s), game, f"strategies[{i}]", simplex_tolerance)
            for i, s in enumerate(parsed.strategies or [])
        ]
    )
