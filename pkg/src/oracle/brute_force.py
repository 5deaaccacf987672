"""Brute-force references for the fast paths.

Nothing here reuses the dynamic program, the composition-based defector
enumeration or the robust-action intersection: crowds are expanded into every
labelled pure action tuple and defectors into every labelled assignment.
"""
from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from src.engine import CrowdSpec, FrequencyDistribution
from src.errors import CapExceededError
from src.game.compositions import composition_count, enumerate_compositions
from src.game.model import FrequencyVector, Game, MixedStrategy, Profile
from src.game.numbers import Number
from src.robust import check_alpha
from src.search import PureProfileCandidate
from src.tools import SeedSplitter

logger = logging.getLogger(__name__)

ORACLE_MAX_PROFILES = 1_000_000
ORACLE_MAX_PURE_PROFILES = 100_000


@dataclass(frozen=True)
class OracleVerdict:
    verdict: bool
    method: str
    samples: int
    seed: int
    pure_verdict: bool
    mixed_contradictions: int = 0
    deviation: Optional[Tuple[int, Tuple[int, ...], int]] = None


def _expand_players(crowd: CrowdSpec, m: int) -> List[MixedStrategy]:
    players = list(crowd.normal_profile.players())
    if crowd.defector_config is not None:
        for action, count in enumerate(crowd.defector_config):
            players.extend(MixedStrategy.pure(m, action) for _ in range(count))
    if crowd.defector_profile is not None:
        players.extend(crowd.defector_profile.players())
    return players


def _enumerate(players: Sequence[MixedStrategy], m: int, limit: int) -> Dict[FrequencyVector, Number]:
    size = m ** len(players)
    if size > limit:
        raise CapExceededError("oracle_max_profiles", size, limit)
    mass: Dict[FrequencyVector, Number] = {}
    for actions in itertools.product(range(m), repeat=len(players)):
        prob: Number = Fraction(1)
        for player, action in zip(players, actions):
            prob = prob * player[action]
            if prob == 0:
                break
        if prob == 0:
            continue
        tally = Counter(actions)
        key = FrequencyVector(tuple(tally.get(a, 0) for a in range(m)))
        mass[key] = mass.get(key, 0) + prob
    return mass


def oracle_freq_dist(
    crowd: CrowdSpec,
    m: int,
    limit: int = ORACLE_MAX_PROFILES,
) -> FrequencyDistribution:
    players = _expand_players(crowd, m)
    mass = _enumerate(players, m, limit)
    support = tuple(sorted(mass.items(), key=lambda item: item[0].sort_key()))
    return FrequencyDistribution(support=support, total=len(players))


def _payoffs(game: Game, players: Sequence[MixedStrategy], limit: int) -> Tuple[Number, ...]:
    mass = _enumerate(players, game.m, limit)
    return tuple(
        sum((p * game.u(a, freq) for freq, p in mass.items()), Fraction(0)) for a in range(game.m)
    )


def _support_optimal(own: MixedStrategy, payoffs: Sequence[Number], tolerance: float) -> bool:
    best = max(payoffs)
    return all(payoffs[a] >= best - tolerance for a in own.support)


def _dirichlet_strategy(rng, m: int, denominator: int, numeric: bool) -> MixedStrategy:
    draw = rng.dirichlet([1.0] * m)
    if numeric:
        return MixedStrategy(tuple(float(x) / float(draw.sum()) for x in draw))
    rounded = [Fraction(float(x)).limit_denominator(denominator) for x in draw]
    total = sum(rounded)
    if total == 0:
        return MixedStrategy.uniform(m)
    return MixedStrategy(tuple(p / total for p in rounded))


def oracle_is_robust(
    game: Game,
    profile: Profile,
    alpha: int,
    mixed_samples: int = 0,
    seed: int = 0,
    limit: int = ORACLE_MAX_PROFILES,
    sample_denominator: int = 1000,
) -> OracleVerdict:
    check_alpha(game, alpha)
    normals = profile.sized(game.n_players - alpha)
    m = game.m
    tol = game.tolerance
    labelled = m ** alpha
    if labelled > limit:
        raise CapExceededError("oracle_max_profiles", labelled, limit)

    pure_ok = True
    deviation: Optional[Tuple[int, Tuple[int, ...], int]] = None
    for player in range(normals.size or 0):
        own = normals.strategy(player)
        others = list(normals.without(player).players())
        for defectors in itertools.product(range(m), repeat=alpha):
            crowd = others + [MixedStrategy.pure(m, a, game.numeric) for a in defectors]
            payoffs = _payoffs(game, crowd, limit)
            if not _support_optimal(own, payoffs, tol):
                pure_ok = False
                best = max(payoffs)
                deviation = (player, tuple(defectors), min(a for a in range(m) if payoffs[a] == best))
                break
        if not pure_ok:
            break

    contradictions = 0
    mixed_ok = True
    if mixed_samples and alpha:
        streams = SeedSplitter(seed)
        for sample in range(mixed_samples):
            rng = streams.generator("oracle", alpha, sample)
            defectors = [_dirichlet_strategy(rng, m, sample_denominator, game.numeric) for _ in range(alpha)]
            for player in range(normals.size or 0):
                own = normals.strategy(player)
                crowd = list(normals.without(player).players()) + defectors
                if not _support_optimal(own, _payoffs(game, crowd, limit), tol):
                    mixed_ok = False
                    if pure_ok:
                        contradictions += 1
                    break

    verdict = OracleVerdict(
        verdict=pure_ok and mixed_ok,
        method="sampled-mixed" if mixed_samples else "exhaustive-pure",
        samples=mixed_samples,
        seed=seed,
        pure_verdict=pure_ok,
        mixed_contradictions=contradictions,
        deviation=deviation,
    )
    logger.debug("oracle alpha=%d: %s", alpha, verdict)
    return verdict


def oracle_pure_nash(game: Game, limit: int = ORACLE_MAX_PURE_PROFILES) -> List[PureProfileCandidate]:
    count = composition_count(game.n_players, game.m)
    if count > limit:
        raise CapExceededError("oracle_max_pure_profiles", count, limit)
    equilibria: List[PureProfileCandidate] = []
    for assignment in enumerate_compositions(game.n_players, game.m, None):
        stable = True
        for action in assignment.occupied():
            others = assignment - FrequencyVector.unit(game.m, action)
            own_value = game.u(action, others)
            if any(game.u(b, others) > own_value + game.tolerance for b in range(game.m)):
                stable = False
                break
        if stable:
            equilibria.append(PureProfileCandidate(assignment))
    return equilibria


def oracle_defection_index(game: Game, profile: Profile, limit: int = ORACLE_MAX_PROFILES) -> int:
    full = profile.sized(game.n_players)
    index = -1
    for alpha in range(game.n_players):
        if not oracle_is_robust(game, full.restrict(game.n_players - alpha), alpha, limit=limit).verdict:
            break
        index = alpha
    return index
