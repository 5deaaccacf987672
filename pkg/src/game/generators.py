from __future__ import annotations

import logging
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

from src.errors import InvalidParameterError
from src.game.compositions import DEFAULT_MAX_COMPOSITIONS, enumerate_compositions
from src.game.model import ActionSet, FrequencyVector, Game
from src.game.numbers import NUMERIC_EPSILON, Number, parse_rational
from src.tools import SeedSplitter

logger = logging.getLogger(__name__)

TIE_RULES = ("inclusive", "strict")


def default_labels(m: int) -> Tuple[str, ...]:
    return tuple(str(i + 1) for i in range(m))


def _check_shape(n_players: int, m: int, min_actions: int = 1) -> None:
    if n_players < 2:
        raise InvalidParameterError(f"n_players must be >= 2, got {n_players}")
    if m < min_actions:
        raise InvalidParameterError(f"need at least {min_actions} actions, got {m}")


def _labels_for(m: int, labels: Optional[Sequence[str]]) -> ActionSet:
    if labels is None:
        return ActionSet(default_labels(m))
    if len(labels) != m:
        raise InvalidParameterError(f"expected {m} labels, got {len(labels)}")
    return ActionSet(tuple(labels))


def matching_utility(action: int, freq: FrequencyVector, tie_rule: str = "inclusive") -> int:
    top = max(freq.counts)
    if freq[action] != top:
        return 0
    if tie_rule == "strict" and sum(1 for c in freq.counts if c == top) > 1:
        return 0
    return 1


def make_matching_game(
    n_players: int,
    m: int,
    tie_rule: str = "inclusive",
    labels: Optional[Sequence[str]] = None,
    numeric: bool = False,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
    epsilon: float = NUMERIC_EPSILON,
) -> Game:
    """Utility 1 when the own action is played by the most other players."""
    _check_shape(n_players, m, min_actions=2)
    if tie_rule not in TIE_RULES:
        raise InvalidParameterError(f"tie_rule must be one of {TIE_RULES}, got {tie_rule!r}")
    one: Number = 1.0 if numeric else Fraction(1)
    zero: Number = 0.0 if numeric else Fraction(0)
    utility: Dict[Tuple[int, FrequencyVector], Number] = {}
    for freq in enumerate_compositions(n_players - 1, m, limit):
        for action in range(m):
            utility[(action, freq)] = one if matching_utility(action, freq, tie_rule) else zero
    logger.debug("matching game N=%d m=%d tie=%s: %d entries", n_players, m, tie_rule, len(utility))
    return Game(
        n_players=n_players,
        actions=_labels_for(m, labels),
        utility=utility,
        numeric=numeric,
        epsilon=epsilon,
        builtin={"name": "matching", "tie_rule": tie_rule},
    )


def make_independent_game(
    n_players: int,
    values: Sequence[object],
    labels: Optional[Sequence[str]] = None,
    numeric: bool = False,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
    epsilon: float = NUMERIC_EPSILON,
) -> Game:
    m = len(values)
    _check_shape(n_players, m)
    parsed = [parse_rational(v, numeric=numeric, where=f"values[{i}]") for i, v in enumerate(values)]
    utility = {
        (action, freq): parsed[action]
        for freq in enumerate_compositions(n_players - 1, m, limit)
        for action in range(m)
    }
    return Game(
        n_players=n_players,
        actions=_labels_for(m, labels),
        utility=utility,
        numeric=numeric,
        epsilon=epsilon,
    )


def make_random_game(
    n_players: int,
    m: int,
    seed: int,
    denominator: int = 12,
    labels: Optional[Sequence[str]] = None,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> Game:
    _check_shape(n_players, m)
    if denominator < 1:
        raise InvalidParameterError(f"denominator must be >= 1, got {denominator}")
    rng = SeedSplitter(seed).generator("random-game", n_players, m, denominator)
    utility: Dict[Tuple[int, FrequencyVector], Number] = {}
    for freq in enumerate_compositions(n_players - 1, m, limit):
        for action in range(m):
            utility[(action, freq)] = Fraction(int(rng.integers(0, denominator + 1)), denominator)
    return Game(n_players=n_players, actions=_labels_for(m, labels), utility=utility)
