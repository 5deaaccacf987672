from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from src.errors import CapExceededError
from src.game.compositions import DEFAULT_MAX_COMPOSITIONS, composition_count, enumerate_compositions
from src.game.model import FrequencyVector, Game


@dataclass
class ValidationReport:
    valid: bool
    violations: List[str] = field(default_factory=list)
    table_size: int = 0
    expected_size: Optional[int] = None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "valid": self.valid,
            "violations": list(self.violations),
            "table_size": self.table_size,
            "expected_size": self.expected_size,
        }


def _key_text(game: Game, action: int, freq: FrequencyVector) -> str:
    label = game.actions.labels[action] if 0 <= action < game.m else str(action)
    return f"(action {label}, f={freq})"


def validate_game(game: Game, limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS) -> ValidationReport:
    violations: List[str] = []
    m = game.m

    if game.n_players < 2:
        violations.append(f"n_players must be >= 2, got {game.n_players}")
    if m == 0:
        violations.append("action set is empty")
    labels = list(game.actions.labels)
    if any(not isinstance(label, str) or not label for label in labels):
        violations.append("action labels must be non-empty strings")
    if len(set(labels)) != len(labels):
        violations.append(f"action labels are not distinct: {labels}")

    crowd = game.n_players - 1
    for (action, freq), value in game.utility.items():
        if not 0 <= action < m:
            violations.append(f"utility entry for unknown action index {action}")
        if len(freq) != m:
            violations.append(f"{_key_text(game, action, freq)}: frequency vector has {len(freq)} parts, expected {m}")
        elif freq.total != crowd:
            violations.append(f"{_key_text(game, action, freq)}: frequency vector sums to {freq.total}, expected {crowd}")
        if isinstance(value, float):
            if not math.isfinite(value):
                violations.append(f"{_key_text(game, action, freq)}: utility {value} is not finite")
            elif not game.numeric:
                violations.append(f"{_key_text(game, action, freq)}: float utility in exact mode")
        elif not isinstance(value, (Fraction, int)):
            violations.append(f"{_key_text(game, action, freq)}: utility {value!r} is not a rational")

    expected: Optional[int] = None
    if m > 0 and crowd >= 0:
        expected = m * composition_count(crowd, m)
        try:
            domain = enumerate_compositions(crowd, m, limit)
        except CapExceededError as exc:
            violations.append(str(exc))
            domain = ()
        missing = [
            _key_text(game, action, freq)
            for freq in domain
            for action in range(m)
            if (action, freq) not in game.utility
        ]
        if missing:
            violations.append(f"utility table is missing {len(missing)} entries, first {missing[0]}")

    return ValidationReport(
        valid=not violations,
        violations=violations,
        table_size=len(game.utility),
        expected_size=expected,
    )
