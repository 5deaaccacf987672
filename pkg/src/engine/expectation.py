"""Law of the crowd's frequency vector and the expected utilities built on it."""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Optional, Sequence, Tuple

from src.errors import InvalidDimensionError, SizeMismatchError
from src.game.model import ActionRef, FrequencyVector, Game, MixedStrategy, Profile
from src.game.numbers import Number

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FrequencyDistribution:
    support: Tuple[Tuple[FrequencyVector, Number], ...]
    total: int

    def __iter__(self) -> Iterator[Tuple[FrequencyVector, Number]]:
        return iter(self.support)

    def __len__(self) -> int:
        return len(self.support)

    def mass(self) -> Number:
        return sum(p for _, p in self.support)

    def shifted(self, offset: FrequencyVector) -> "FrequencyDistribution":
        return FrequencyDistribution(
            support=tuple((freq + offset, p) for freq, p in self.support),
            total=self.total + offset.total,
        )


@dataclass(frozen=True)
class CrowdSpec:
    normal_profile: Profile
    defector_config: Optional[FrequencyVector] = None
    defector_profile: Optional[Profile] = None

    def __post_init__(self) -> None:
        if self.defector_config is not None and self.defector_profile is not None:
            raise SizeMismatchError("A crowd has either pure or mixed defectors, not both")
        if self.normal_profile.size is None:
            raise SizeMismatchError("The normal part of a crowd needs a declared player count")
        if self.defector_profile is not None and self.defector_profile.size is None:
            raise SizeMismatchError("The defector profile needs a declared player count")

    @property
    def alpha(self) -> int:
        if self.defector_config is not None:
            return self.defector_config.total
        if self.defector_profile is not None:
            return self.defector_profile.size or 0
        return 0

    @property
    def size(self) -> int:
        return (self.normal_profile.size or 0) + self.alpha

    def mixed_players(self) -> Tuple[MixedStrategy, ...]:
        players = self.normal_profile.players()
        if self.defector_profile is not None:
            players = players + self.defector_profile.players()
        return players

    def pure_offset(self, parts: int) -> FrequencyVector:
        if self.defector_config is None:
            return FrequencyVector.zeros(parts)
        return self.defector_config


def _fold(players: Iterable[MixedStrategy], m: int) -> Dict[FrequencyVector, Number]:
    dist: Dict[FrequencyVector, Number] = {FrequencyVector.zeros(m): Fraction(1)}
    units = [FrequencyVector.unit(m, a) for a in range(m)]
    for strategy in players:
        if len(strategy) != m:
            raise InvalidDimensionError(f"Strategy over {len(strategy)} actions, game has {m}")
        step: Dict[FrequencyVector, Number] = {}
        for freq, mass in dist.items():
            for action, prob in enumerate(strategy.probs):
                if prob == 0:
                    continue
                key = freq + units[action]
                step[key] = step.get(key, 0) + mass * prob
        dist = step
    return dist


def _sorted(dist: Dict[FrequencyVector, Number], total: int) -> FrequencyDistribution:
    support = tuple(sorted(dist.items(), key=lambda item: item[0].sort_key()))
    return FrequencyDistribution(support=support, total=total)


def freq_distribution(crowd: CrowdSpec, m: int) -> FrequencyDistribution:
    """Exact distribution of the crowd's frequency vector, one player folded in at a time."""
    offset = crowd.pure_offset(m)
    if len(offset) != m:
        raise InvalidDimensionError(f"Defector configuration has {len(offset)} parts, game has {m}")
    dist = _fold(crowd.mixed_players(), m)
    if offset.total:
        dist = {freq + offset: p for freq, p in dist.items()}
    return _sorted(dist, crowd.size)


def _check_crowd(game: Game, crowd: CrowdSpec) -> None:
    if crowd.size != game.n_players - 1:
        raise SizeMismatchError(
            f"Crowd covers {crowd.size} players, the game needs {game.n_players - 1}"
        )


def payoff_vector(game: Game, dist: FrequencyDistribution) -> Tuple[Number, ...]:
    return tuple(
        sum((p * game.u(action, freq) for freq, p in dist), Fraction(0))
        for action in range(game.m)
    )


def expected_utility(game: Game, own_action: ActionRef, crowd: CrowdSpec) -> Number:
    _check_crowd(game, crowd)
    action = game.action_index(own_action)
    dist = freq_distribution(crowd, game.m)
    return sum((p * game.u(action, freq) for freq, p in dist), Fraction(0))


def expected_utility_mixed(game: Game, own_strategy: MixedStrategy, crowd: CrowdSpec) -> Number:
    _check_crowd(game, crowd)
    if len(own_strategy) != game.m:
        raise InvalidDimensionError(f"Own strategy over {len(own_strategy)} actions, game has {game.m}")
    payoffs = payoff_vector(game, freq_distribution(crowd, game.m))
    return mix_payoffs(own_strategy, payoffs)


def mix_payoffs(strategy: MixedStrategy, payoffs: Sequence[Number]) -> Number:
    return sum((p * v for p, v in zip(strategy.probs, payoffs)), Fraction(0))


def normal_distribution(game: Game, normal_profile: Profile) -> FrequencyDistribution:
    """Distribution over the normal players only; pure defectors shift it."""
    return freq_distribution(CrowdSpec(normal_profile), game.m)
