"""Best responses, the robust-action correspondence and alpha-robustness certificates.

Defector behaviour is enumerated as pure configurations (compositions of alpha
into m parts). An action that is optimal against every pure configuration is
optimal against every mixed defector profile: the mixed objective is a convex
combination of the pure ones, and a common maximiser attains the combination
of their maxima.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, Optional, Sequence, Tuple

from src.engine import CrowdSpec, freq_distribution, mix_payoffs, normal_distribution, payoff_vector
from src.errors import AlphaOutOfRangeError, InvalidDimensionError
from src.game.compositions import DEFAULT_MAX_COMPOSITIONS, enumerate_compositions
from src.game.model import FrequencyVector, Game, MixedStrategy, Profile
from src.game.numbers import Number, argmax_members

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BestResponseSet:
    actions: FrozenSet[int]
    value: Number
    payoffs: Tuple[Number, ...]


@dataclass(frozen=True)
class RobustActionSet:
    actions: FrozenSet[int]
    per_config_argmax: Tuple[Tuple[FrequencyVector, BestResponseSet], ...]

    @property
    def empty(self) -> bool:
        return not self.actions

    def argmax_for(self, config: FrequencyVector) -> BestResponseSet:
        for candidate, br in self.per_config_argmax:
            if candidate == config:
                return br
        raise KeyError(f"No configuration {config} in this robust action set")


@dataclass(frozen=True)
class DefectionWitness:
    player: int
    config: FrequencyVector
    deviation: int
    gain: Number
    dropped: FrozenSet[int]
    removed: Optional[FrequencyVector] = None


@dataclass(frozen=True)
class RobustnessCertificate:
    robust: bool
    alpha: int
    witness: Optional[DefectionWitness] = None
    evidence: Tuple[Tuple[int, RobustActionSet], ...] = ()
    tolerance_qualified: bool = False

    @property
    def verdict(self) -> str:
        return "robust" if self.robust else "not-robust"


def check_alpha(game: Game, alpha: int) -> None:
    if not 0 <= alpha <= game.n_players - 1:
        raise AlphaOutOfRangeError(alpha, game.n_players)


def _normals(game: Game, normal_profile: Profile, alpha: int) -> Profile:
    normals = normal_profile.sized(game.n_players - alpha - 1)
    if normals.strategies and normals.m != game.m:
        raise InvalidDimensionError(f"Profile strategies cover {normals.m} actions, game has {game.m}")
    return normals


def best_response_of(payoffs: Sequence[Number], tolerance: float = 0.0) -> BestResponseSet:
    members, best = argmax_members(payoffs, tolerance)
    return BestResponseSet(actions=members, value=best, payoffs=tuple(payoffs))


def best_response_set(
    game: Game,
    normal_profile: Profile,
    defector_config: FrequencyVector,
) -> BestResponseSet:
    alpha = defector_config.total
    check_alpha(game, alpha)
    if len(defector_config) != game.m:
        raise InvalidDimensionError(
            f"Defector configuration has {len(defector_config)} parts, game has {game.m}"
        )
    normals = _normals(game, normal_profile, alpha)
    dist = freq_distribution(CrowdSpec(normals, defector_config=defector_config), game.m)
    return best_response_of(payoff_vector(game, dist), game.tolerance)


def robust_action_set(
    game: Game,
    normal_profile: Profile,
    alpha: int,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> RobustActionSet:
    check_alpha(game, alpha)
    normals = _normals(game, normal_profile, alpha)
    base = normal_distribution(game, normals)
    survivors = frozenset(range(game.m))
    per_config: List[Tuple[FrequencyVector, BestResponseSet]] = []
    for config in enumerate_compositions(alpha, game.m, limit):
        br = best_response_of(payoff_vector(game, base.shifted(config)), game.tolerance)
        per_config.append((config, br))
        survivors &= br.actions
    logger.debug("T at alpha=%d: %s over %d configurations", alpha, sorted(survivors), len(per_config))
    return RobustActionSet(actions=survivors, per_config_argmax=tuple(per_config))


def first_violation(
    player: int,
    own: MixedStrategy,
    robust_set: RobustActionSet,
    removed: Optional[FrequencyVector] = None,
) -> Optional[DefectionWitness]:
    support = own.support
    for config, br in robust_set.per_config_argmax:
        if support <= br.actions:
            continue
        return DefectionWitness(
            player=player,
            config=config,
            deviation=min(br.actions),
            gain=br.value - mix_payoffs(own, br.payoffs),
            dropped=frozenset(support - br.actions),
            removed=removed,
        )
    return None


def is_alpha_robust(
    game: Game,
    profile: Profile,
    alpha: int,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> RobustnessCertificate:
    check_alpha(game, alpha)
    normals = profile.sized(game.n_players - alpha)
    evidence: List[Tuple[int, RobustActionSet]] = []
    for player in normals.distinct_players():
        own = normals.strategy(player)
        if len(own) != game.m:
            raise InvalidDimensionError(f"Strategy over {len(own)} actions, game has {game.m}")
        robust_set = robust_action_set(game, normals.without(player), alpha, limit)
        evidence.append((player, robust_set))
        if not own.support <= robust_set.actions:
            witness = first_violation(player, own, robust_set)
            logger.info(
                "not %d-robust: player %d, config %s, deviation %s",
                alpha,
                player,
                witness.config if witness else None,
                game.label(witness.deviation) if witness else None,
            )
            return RobustnessCertificate(
                robust=False,
                alpha=alpha,
                witness=witness,
                evidence=tuple(evidence),
                tolerance_qualified=game.numeric,
            )
    return RobustnessCertificate(
        robust=True,
        alpha=alpha,
        evidence=tuple(evidence),
        tolerance_qualified=game.numeric,
    )


def defection_index_chain(
    game: Game,
    profile: Profile,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> Tuple[int, List[RobustnessCertificate]]:
    full = profile.sized(game.n_players)
    chain: List[RobustnessCertificate] = []
    for alpha in range(game.n_players):
        certificate = is_alpha_robust(game, full.restrict(game.n_players - alpha), alpha, limit)
        chain.append(certificate)
        if not certificate.robust:
            return alpha - 1, chain
    return game.n_players - 1, chain


def defection_index(
    game: Game,
    profile: Profile,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> int:
    index, _ = defection_index_chain(game, profile, limit)
    return index
