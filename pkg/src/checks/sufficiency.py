"""Sufficient conditions for a non-empty robust-action set.

Both checks look at the payoff vector over own actions, one vector per pure
defector configuration. Neither is complete: T can be non-empty while both
fail.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.engine import normal_distribution, payoff_vector
from src.errors import InvalidDimensionError, InvalidParameterError, SizeMismatchError
from src.game.compositions import DEFAULT_MAX_COMPOSITIONS, enumerate_compositions
from src.game.model import FrequencyVector, Game, Profile
from src.game.numbers import Number, argmax_members
from src.robust import check_alpha

logger = logging.getLogger(__name__)

LEMMA2_CONVENTION = "two-sided-componentwise"


@dataclass(frozen=True)
class SensitivityReport:
    base_config: FrequencyVector
    c: Tuple[Number, ...]
    delta_c: Tuple[Number, ...]
    delta_c_up: Tuple[Number, ...]
    y: Number
    bound: Tuple[Number, ...]
    holds: bool
    holds_literal: bool
    anchor: Optional[int] = None
    convention: str = LEMMA2_CONVENTION


@dataclass(frozen=True)
class DirectionReport:
    invariant: bool
    vectors: Tuple[Tuple[FrequencyVector, Tuple[Number, ...]], ...]
    differing_config: Optional[FrequencyVector] = None
    tolerance: Number = 0
    norm: str = "euclidean"


def config_payoffs(
    game: Game,
    normal_profile: Profile,
    alpha: int,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> List[Tuple[FrequencyVector, Tuple[Number, ...]]]:
    check_alpha(game, alpha)
    normals = normal_profile.sized(game.n_players - alpha - 1)
    if normals.strategies and normals.m != game.m:
        raise InvalidDimensionError(f"Profile strategies cover {normals.m} actions, game has {game.m}")
    base = normal_distribution(game, normals)
    return [
        (config, payoff_vector(game, base.shifted(config)))
        for config in enumerate_compositions(alpha, game.m, limit)
    ]


def lemma2_check(
    game: Game,
    normal_profile: Profile,
    alpha: int,
    base_config: FrequencyVector,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> SensitivityReport:
    """LP sensitivity bound around the best response to ``base_config``.

    ``delta_c`` is the largest drop of each payoff over all configurations and
    ``delta_c_up`` the largest rise. A base-optimal action a* stays optimal
    everywhere when its worst drop plus any rival's worst rise fits in the
    rival's optimality gap; ``holds`` reports that bound. ``holds_literal``
    keeps the one-sided comparison delta_c <= y - c, which alone is not a
    certificate.
    """
    if len(base_config) != game.m:
        raise InvalidDimensionError(f"Base configuration has {len(base_config)} parts, game has {game.m}")
    if base_config.total != alpha:
        raise SizeMismatchError(f"Base configuration sums to {base_config.total}, alpha is {alpha}")
    rows = config_payoffs(game, normal_profile, alpha, limit)
    c = dict(rows)[base_config]
    m = game.m
    tol = game.tolerance

    delta_c = tuple(max(c[a] - row[a] for _, row in rows) for a in range(m))
    delta_c_up = tuple(max(row[a] - c[a] for _, row in rows) for a in range(m))
    y = max(c)
    bound = tuple(y - c[a] for a in range(m))
    holds_literal = all(delta_c[a] <= bound[a] + tol for a in range(m))

    anchor: Optional[int] = None
    optimal, _ = argmax_members(c, tol)
    for star in sorted(optimal):
        if all(
            delta_c[star] + delta_c_up[a] <= c[star] - c[a] + tol
            for a in range(m)
            if a != star
        ):
            anchor = star
            break

    logger.debug("lemma2 base=%s holds=%s literal=%s", base_config, anchor is not None, holds_literal)
    return SensitivityReport(
        base_config=base_config,
        c=c,
        delta_c=delta_c,
        delta_c_up=delta_c_up,
        y=y,
        bound=bound,
        holds=anchor is not None,
        holds_literal=holds_literal,
        anchor=anchor,
    )


def _same_direction_exact(v: Sequence[Number], w: Sequence[Number]) -> bool:
    v_zero = all(x == 0 for x in v)
    w_zero = all(x == 0 for x in w)
    if v_zero or w_zero:
        return v_zero and w_zero
    for i in range(len(v)):
        for j in range(i + 1, len(v)):
            if v[i] * w[j] != v[j] * w[i]:
                return False
    return sum(a * b for a, b in zip(v, w)) > 0


def _same_direction_numeric(v: Sequence[Number], w: Sequence[Number], tolerance: float) -> bool:
    a = np.asarray([float(x) for x in v])
    b = np.asarray([float(x) for x in w])
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return na == 0.0 and nb == 0.0
    return float(np.max(np.abs(a / na - b / nb))) <= tolerance


def direction_invariance_check(
    game: Game,
    normal_profile: Profile,
    alpha: int,
    tolerance: Optional[Number] = None,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> DirectionReport:
    if tolerance is None:
        tolerance = game.tolerance if game.numeric else 0
    if tolerance < 0:
        raise InvalidParameterError(f"tolerance must be >= 0, got {tolerance}")
    rows = config_payoffs(game, normal_profile, alpha, limit)
    exact = not game.numeric and tolerance == 0
    reference = rows[0][1]
    differing: Optional[FrequencyVector] = None
    for config, vector in rows[1:]:
        if exact:
            same = _same_direction_exact(reference, vector)
        else:
            same = _same_direction_numeric(reference, vector, float(tolerance))
        if not same:
            differing = config
            break
    return DirectionReport(
        invariant=differing is None,
        vectors=tuple(rows),
        differing_config=differing,
        tolerance=tolerance,
    )
