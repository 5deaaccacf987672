from __future__ import annotations

from typing import Any, Iterable, List, Optional, Sequence


class RobustEqError(ValueError):
    exit_code = 2


class ConfigurationError(RobustEqError):
    pass


class InvalidDimensionError(RobustEqError):
    pass


class MalformedRationalError(RobustEqError):
    def __init__(self, value: Any, where: str = "value") -> None:
        super().__init__(f"{where}: cannot parse {value!r} as an exact rational")
        self.value = value
        self.where = where


class MalformedInputError(RobustEqError):
    def __init__(self, message: str, reference: Optional[str] = None) -> None:
        text = f"{reference}: {message}" if reference else message
        super().__init__(text)
        self.reference = reference


class UnknownActionError(RobustEqError):
    def __init__(self, label: str, known: Sequence[str]) -> None:
        super().__init__(f"Unknown action '{label}'. Known actions: {list(known)}")
        self.label = label


class IncompleteTableError(RobustEqError):
    def __init__(self, missing: Iterable[str]) -> None:
        self.missing: List[str] = list(missing)
        preview = ", ".join(self.missing[:10])
        more = f" (+{len(self.missing) - 10} more)" if len(self.missing) > 10 else ""
        super().__init__(f"Utility table is incomplete; missing {preview}{more}")


class ConflictingEntryError(RobustEqError):
    def __init__(self, key: str, first: Any, second: Any) -> None:
        super().__init__(f"Conflicting utility entries for {key}: {first} vs {second}")
        self.key = key


class InvalidGameError(RobustEqError):
    def __init__(self, violations: Sequence[str]) -> None:
        self.violations = list(violations)
        super().__init__("Invalid game: " + "; ".join(self.violations))


class InvalidStrategyError(RobustEqError):
    pass


class SizeMismatchError(RobustEqError):
    pass


class AlphaOutOfRangeError(RobustEqError):
    def __init__(self, alpha: int, n_players: int) -> None:
        super().__init__(f"alpha={alpha} is outside [0, {n_players - 1}]")
        self.alpha = alpha


class CapExceededError(RobustEqError):
    def __init__(self, cap: str, requested: int, limit: int) -> None:
        super().__init__(f"Cap '{cap}' exceeded: {requested} > {limit}")
        self.cap = cap
        self.requested = requested
        self.limit = limit


class InvalidParameterError(RobustEqError):
    pass
