from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Dict, FrozenSet, Iterator, Mapping, Optional, Sequence, Tuple, Union

from src.errors import (
    InvalidDimensionError,
    InvalidStrategyError,
    SizeMismatchError,
    UnknownActionError,
)
from src.game.numbers import NUMERIC_EPSILON, SIMPLEX_TOLERANCE, Number, is_numeric

ActionRef = Union[int, str]


@dataclass(frozen=True)
class ActionSet:
    labels: Tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "labels", tuple(self.labels))

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def label(self, index: int) -> str:
        return self.labels[index]

    def index(self, action: ActionRef) -> int:
        if isinstance(action, int) and not isinstance(action, bool):
            if 0 <= action < len(self.labels):
                return action
            raise UnknownActionError(str(action), self.labels)
        try:
            return self.labels.index(action)
        except ValueError:
            raise UnknownActionError(str(action), self.labels) from None


@dataclass(frozen=True, order=False)
class FrequencyVector:
    counts: Tuple[int, ...]

    def __post_init__(self) -> None:
        counts = tuple(self.counts)
        for c in counts:
            if isinstance(c, bool) or not isinstance(c, int):
                raise InvalidDimensionError(f"Frequency counts must be integers, got {counts!r}")
            if c < 0:
                raise InvalidDimensionError(f"Frequency counts must be non-negative, got {counts!r}")
        object.__setattr__(self, "counts", counts)

    @classmethod
    def zeros(cls, parts: int) -> "FrequencyVector":
        return cls((0,) * parts)

    @classmethod
    def unit(cls, parts: int, action: int, count: int = 1) -> "FrequencyVector":
        counts = [0] * parts
        counts[action] = count
        return cls(tuple(counts))

    @property
    def total(self) -> int:
        return sum(self.counts)

    @property
    def parts(self) -> int:
        return len(self.counts)

    def __len__(self) -> int:
        return len(self.counts)

    def __getitem__(self, index: int) -> int:
        return self.counts[index]

    def __iter__(self) -> Iterator[int]:
        return iter(self.counts)

    def __add__(self, other: "FrequencyVector") -> "FrequencyVector":
        self._check_parts(other)
        return FrequencyVector(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __sub__(self, other: "FrequencyVector") -> "FrequencyVector":
        self._check_parts(other)
        return FrequencyVector(tuple(a - b for a, b in zip(self.counts, other.counts)))

    def dominates(self, other: "FrequencyVector") -> bool:
        self._check_parts(other)
        return all(a >= b for a, b in zip(self.counts, other.counts))

    def occupied(self) -> Tuple[int, ...]:
        return tuple(i for i, c in enumerate(self.counts) if c > 0)

    def sort_key(self) -> Tuple[int, ...]:
        # lexicographically descending composition order
        return tuple(-c for c in self.counts)

    def as_list(self) -> list:
        return list(self.counts)

    def _check_parts(self, other: "FrequencyVector") -> None:
        if len(other.counts) != len(self.counts):
            raise InvalidDimensionError(
                f"Frequency vectors differ in length: {len(self.counts)} vs {len(other.counts)}"
            )

    def __str__(self) -> str:
        return "(" + ",".join(str(c) for c in self.counts) + ")"


@dataclass(frozen=True)
class MixedStrategy:
    probs: Tuple[Number, ...]

    def __post_init__(self) -> None:
        probs = tuple(self.probs)
        if not probs:
            raise InvalidStrategyError("A mixed strategy needs at least one action")
        if any(p < 0 for p in probs):
            raise InvalidStrategyError(f"Negative probability in {probs!r}")
        total = sum(probs)
        if is_numeric(probs):
            if abs(total - 1) > SIMPLEX_TOLERANCE:
                raise InvalidStrategyError(f"Probabilities sum to {total}, not 1")
        elif total != 1:
            raise InvalidStrategyError(f"Probabilities sum to {total}, not 1")
        object.__setattr__(self, "probs", probs)

    @classmethod
    def pure(cls, parts: int, action: int, numeric: bool = False) -> "MixedStrategy":
        one: Number = 1.0 if numeric else Fraction(1)
        zero: Number = 0.0 if numeric else Fraction(0)
        return cls(tuple(one if i == action else zero for i in range(parts)))

    @classmethod
    def uniform(cls, parts: int, numeric: bool = False) -> "MixedStrategy":
        share: Number = 1.0 / parts if numeric else Fraction(1, parts)
        if numeric:
            probs = [share] * parts
            probs[-1] = 1.0 - share * (parts - 1)
            return cls(tuple(probs))
        return cls((share,) * parts)

    @classmethod
    def uniform_over(cls, parts: int, members: FrozenSet[int], numeric: bool = False) -> "MixedStrategy":
        if not members:
            raise InvalidStrategyError("Cannot mix over an empty action set")
        share: Number = 1.0 / len(members) if numeric else Fraction(1, len(members))
        zero: Number = 0.0 if numeric else Fraction(0)
        return cls(tuple(share if i in members else zero for i in range(parts)))

    @property
    def numeric(self) -> bool:
        return is_numeric(self.probs)

    @property
    def support(self) -> FrozenSet[int]:
        return frozenset(i for i, p in enumerate(self.probs) if p > 0)

    def __len__(self) -> int:
        return len(self.probs)

    def __getitem__(self, index: int) -> Number:
        return self.probs[index]

    def mix(self, other: "MixedStrategy", weight: Number) -> "MixedStrategy":
        if len(other) != len(self):
            raise InvalidDimensionError("Cannot mix strategies of different length")
        return MixedStrategy(
            tuple((1 - weight) * p + weight * q for p, q in zip(self.probs, other.probs))
        )

    def distance(self, other: "MixedStrategy") -> Number:
        return max(abs(p - q) for p, q in zip(self.probs, other.probs))


@dataclass(frozen=True)
class Profile:
    strategies: Tuple[MixedStrategy, ...]
    symmetric: bool = False
    size: Optional[int] = None

    def __post_init__(self) -> None:
        strategies = tuple(self.strategies)
        object.__setattr__(self, "strategies", strategies)
        if self.symmetric:
            if len(strategies) != 1:
                raise SizeMismatchError("A symmetric profile carries exactly one strategy")
            if self.size is not None and self.size < 0:
                raise SizeMismatchError(f"Profile size must be non-negative, got {self.size}")
        else:
            if self.size is not None and self.size != len(strategies):
                raise SizeMismatchError(
                    f"Profile declares {self.size} players but lists {len(strategies)} strategies"
                )
            object.__setattr__(self, "size", len(strategies))
        widths = {len(s) for s in strategies}
        if len(widths) > 1:
            raise InvalidDimensionError(f"Strategies disagree on the number of actions: {sorted(widths)}")

    @classmethod
    def symmetric_of(cls, strategy: MixedStrategy, size: Optional[int] = None) -> "Profile":
        return cls((strategy,), symmetric=True, size=size)

    @classmethod
    def of(cls, strategies: Sequence[MixedStrategy]) -> "Profile":
        return cls(tuple(strategies))

    @classmethod
    def from_counts(cls, counts: FrequencyVector, numeric: bool = False) -> "Profile":
        parts = len(counts)
        strategies = [
            MixedStrategy.pure(parts, action, numeric)
            for action, count in enumerate(counts)
            for _ in range(count)
        ]
        return cls(tuple(strategies))

    @property
    def m(self) -> Optional[int]:
        return len(self.strategies[0]) if self.strategies else None

    @property
    def numeric(self) -> bool:
        return any(s.numeric for s in self.strategies)

    def sized(self, n: int) -> "Profile":
        if self.symmetric:
            if self.size is not None and self.size != n:
                raise SizeMismatchError(f"Profile covers {self.size} players, expected {n}")
            return replace(self, size=n)
        if self.size != n:
            raise SizeMismatchError(f"Profile covers {self.size} players, expected {n}")
        return self

    def restrict(self, n: int) -> "Profile":
        if self.symmetric:
            return replace(self, size=n)
        if n > len(self.strategies):
            raise SizeMismatchError(f"Cannot restrict {len(self.strategies)} players to {n}")
        return Profile(self.strategies[:n])

    def without(self, player: int) -> "Profile":
        size = self._require_size()
        if not 0 <= player < size:
            raise SizeMismatchError(f"Player {player} is not covered by a profile of {size}")
        if self.symmetric:
            return replace(self, size=size - 1)
        return Profile(self.strategies[:player] + self.strategies[player + 1 :])

    def strategy(self, player: int) -> MixedStrategy:
        size = self._require_size()
        if not 0 <= player < size:
            raise SizeMismatchError(f"Player {player} is not covered by a profile of {size}")
        return self.strategies[0] if self.symmetric else self.strategies[player]

    def players(self) -> Tuple[MixedStrategy, ...]:
        size = self._require_size()
        return self.strategies * size if self.symmetric else self.strategies

    def distinct_players(self) -> Tuple[int, ...]:
        size = self._require_size()
        if self.symmetric:
            return (0,) if size else ()
        return tuple(range(size))

    def _require_size(self) -> int:
        if self.size is None:
            raise SizeMismatchError("Symmetric profile has no declared player count")
        return self.size


@dataclass(frozen=True)
class Game:
    n_players: int
    actions: ActionSet
    utility: Mapping[Tuple[int, FrequencyVector], Number]
    numeric: bool = False
    epsilon: float = NUMERIC_EPSILON
    builtin: Optional[Dict[str, Any]] = field(default=None, compare=False)

    @property
    def m(self) -> int:
        return len(self.actions)

    @property
    def tolerance(self) -> float:
        return self.epsilon if self.numeric else 0.0

    def u(self, action: int, freq: FrequencyVector) -> Number:
        return self.utility[(action, freq)]

    def action_index(self, action: ActionRef) -> int:
        return self.actions.index(action)

    def label(self, action: int) -> str:
        return self.actions.label(action)

    def labels_of(self, actions: FrozenSet[int]) -> list:
        return [self.actions.label(a) for a in sorted(actions)]
