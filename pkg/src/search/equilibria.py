from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, FrozenSet, List, Optional, Tuple, Union

from src.errors import InvalidDimensionError, InvalidParameterError, SizeMismatchError
from src.game.compositions import DEFAULT_MAX_COMPOSITIONS, bounded_compositions, enumerate_compositions
from src.game.model import FrequencyVector, Game, MixedStrategy, Profile
from src.game.numbers import Number, to_mode
from src.robust import (
    RobustActionSet,
    RobustnessCertificate,
    check_alpha,
    first_violation,
    is_alpha_robust,
    robust_action_set,
)

logger = logging.getLogger(__name__)

CONVERGENCE_TOLERANCE = 1e-10


@dataclass(frozen=True)
class PureProfileCandidate:
    assignment: FrequencyVector


Candidate = Union[PureProfileCandidate, MixedStrategy]


@dataclass(frozen=True)
class SearchReport:
    alpha: int
    status: str
    candidates_examined: int
    robust_profiles: Tuple[Tuple[Candidate, RobustnessCertificate], ...]
    outcome: str = "complete"
    iterations: int = 0
    final_strategy: Optional[MixedStrategy] = None

    @property
    def found(self) -> bool:
        return bool(self.robust_profiles)


@dataclass(frozen=True)
class ScanPoint:
    lattice: FrequencyVector
    strategy: MixedStrategy
    actions: FrozenSet[int]


@dataclass(frozen=True)
class ScanReport:
    alpha: int
    resolution: int
    points: Tuple[ScanPoint, ...]

    @property
    def non_empty(self) -> int:
        return sum(1 for point in self.points if point.actions)

    @property
    def fraction_non_empty(self) -> Fraction:
        return Fraction(self.non_empty, len(self.points)) if self.points else Fraction(1)

    @property
    def empty_points(self) -> Tuple[ScanPoint, ...]:
        return tuple(point for point in self.points if not point.actions)

    @property
    def all_non_empty(self) -> bool:
        return self.non_empty == len(self.points)


def verify_pure_candidate(
    game: Game,
    assignment: FrequencyVector,
    alpha: int,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> RobustnessCertificate:
    """Alpha-robustness of a pure assignment of all N players.

    The assignment need not be symmetric, so every choice of which alpha of the
    other players defect is checked.
    """
    check_alpha(game, alpha)
    if len(assignment) != game.m or assignment.total != game.n_players:
        raise SizeMismatchError(
            f"Assignment {assignment} must have {game.m} parts summing to {game.n_players}"
        )
    evidence: List[Tuple[int, RobustActionSet]] = []
    first_player = 0
    for action, count in enumerate(assignment):
        if not count:
            continue
        rest = assignment - FrequencyVector.unit(game.m, action)
        for removed in bounded_compositions(alpha, rest, limit):
            normals = Profile.from_counts(rest - removed, game.numeric)
            robust_set = robust_action_set(game, normals, alpha, limit)
            evidence.append((first_player, robust_set))
            if action not in robust_set.actions:
                own = MixedStrategy.pure(game.m, action, game.numeric)
                return RobustnessCertificate(
                    robust=False,
                    alpha=alpha,
                    witness=first_violation(first_player, own, robust_set, removed=removed),
                    evidence=tuple(evidence),
                    tolerance_qualified=game.numeric,
                )
        first_player += count
    return RobustnessCertificate(
        robust=True,
        alpha=alpha,
        evidence=tuple(evidence),
        tolerance_qualified=game.numeric,
    )


def find_pure_robust(
    game: Game,
    alpha: int,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> SearchReport:
    check_alpha(game, alpha)
    candidates = enumerate_compositions(game.n_players, game.m, limit)
    found: List[Tuple[Candidate, RobustnessCertificate]] = []
    for assignment in candidates:
        certificate = verify_pure_candidate(game, assignment, alpha, limit)
        if certificate.robust:
            found.append((PureProfileCandidate(assignment), certificate))
    logger.info("pure search alpha=%d: %d of %d robust", alpha, len(found), len(candidates))
    return SearchReport(
        alpha=alpha,
        status="exhaustive",
        candidates_examined=len(candidates),
        robust_profiles=tuple(found),
    )


def _uniform_rule(m: int, members: FrozenSet[int], numeric: bool) -> MixedStrategy:
    return MixedStrategy.uniform_over(m, members, numeric)


def _lowest_index_rule(m: int, members: FrozenSet[int], numeric: bool) -> MixedStrategy:
    return MixedStrategy.pure(m, min(members), numeric)


SELECTION_RULES: Dict[str, Callable[[int, FrozenSet[int], bool], MixedStrategy]] = {
    "uniform": _uniform_rule,
    "lowest-index": _lowest_index_rule,
}


def _in_mode(strategy: MixedStrategy, numeric: bool) -> MixedStrategy:
    if strategy.numeric == numeric:
        return strategy
    return MixedStrategy(tuple(to_mode(p, numeric) for p in strategy.probs))


def _clear_small(strategy: MixedStrategy, tolerance: float) -> MixedStrategy:
    kept = [p if p >= tolerance else 0.0 for p in strategy.probs]
    total = sum(kept)
    return MixedStrategy(tuple(p / total for p in kept))


def br_dynamics(
    game: Game,
    alpha: int,
    init: MixedStrategy,
    max_iters: int = 200,
    damping: Number = Fraction(1, 2),
    selection_rule: str = "uniform",
    convergence_tolerance: float = CONVERGENCE_TOLERANCE,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> SearchReport:
    """Damped best-response dynamics on symmetric strategies.

    Heuristic: a missing result says nothing about existence.
    """
    check_alpha(game, alpha)
    if max_iters < 1:
        raise InvalidParameterError(f"max_iters must be >= 1, got {max_iters}")
    if not 0 < damping <= 1:
        raise InvalidParameterError(f"damping must lie in (0, 1], got {damping}")
    if len(init) != game.m:
        raise InvalidDimensionError(f"Initial strategy over {len(init)} actions, game has {game.m}")
    try:
        select = SELECTION_RULES[selection_rule]
    except KeyError:
        raise InvalidParameterError(
            f"Unknown selection rule '{selection_rule}'. Known: {sorted(SELECTION_RULES)}"
        ) from None

    numeric = game.numeric
    weight = to_mode(damping, numeric)
    sigma = _in_mode(init, numeric)

    def target_of(strategy: MixedStrategy) -> Optional[MixedStrategy]:
        robust_set = robust_action_set(game, Profile.symmetric_of(strategy), alpha, limit)
        if robust_set.empty:
            return None
        return select(game.m, robust_set.actions, numeric)

    candidate: Optional[MixedStrategy] = None
    iterations = 0
    for iterations in range(1, max_iters + 1):
        target = target_of(sigma)
        if target is None:
            logger.info("br dynamics alpha=%d: T empty at iteration %d", alpha, iterations)
            return SearchReport(
                alpha=alpha,
                status="heuristic",
                candidates_examined=0,
                robust_profiles=(),
                outcome="failed",
                iterations=iterations,
                final_strategy=sigma,
            )
        if target == sigma:
            candidate = sigma
            break
        if target_of(target) == target:
            candidate = target
            break
        step = sigma.mix(target, weight)
        if numeric and sigma.distance(step) < convergence_tolerance:
            candidate = _clear_small(step, convergence_tolerance)
            break
        sigma = step

    if candidate is None:
        return SearchReport(
            alpha=alpha,
            status="heuristic",
            candidates_examined=0,
            robust_profiles=(),
            outcome="max-iters",
            iterations=iterations,
            final_strategy=sigma,
        )

    certificate = is_alpha_robust(game, Profile.symmetric_of(candidate), alpha, limit)
    logger.info(
        "br dynamics alpha=%d: candidate after %d iterations is %s",
        alpha,
        iterations,
        certificate.verdict,
    )
    return SearchReport(
        alpha=alpha,
        status="heuristic",
        candidates_examined=1,
        robust_profiles=((candidate, certificate),) if certificate.robust else (),
        outcome="converged" if certificate.robust else "rejected",
        iterations=iterations,
        final_strategy=candidate,
    )


def t_nonempty_scan(
    game: Game,
    alpha: int,
    grid_resolution: int,
    limit: Optional[int] = DEFAULT_MAX_COMPOSITIONS,
) -> ScanReport:
    """Evaluate T at every symmetric lattice point k/R of the simplex."""
    check_alpha(game, alpha)
    if grid_resolution < 1:
        raise InvalidParameterError(f"grid_resolution must be >= 1, got {grid_resolution}")
    points: List[ScanPoint] = []
    for lattice in enumerate_compositions(grid_resolution, game.m, limit):
        if game.numeric:
            strategy = _float_point(lattice, grid_resolution)
        else:
            strategy = MixedStrategy(tuple(Fraction(k, grid_resolution) for k in lattice))
        robust_set = robust_action_set(game, Profile.symmetric_of(strategy), alpha, limit)
        points.append(ScanPoint(lattice=lattice, strategy=strategy, actions=robust_set.actions))
    report = ScanReport(alpha=alpha, resolution=grid_resolution, points=tuple(points))
    logger.info(
        "scan alpha=%d R=%d: %d/%d non-empty", alpha, grid_resolution, report.non_empty, len(points)
    )
    return report


def _float_point(lattice: FrequencyVector, resolution: int) -> MixedStrategy:
    probs = [k / resolution for k in lattice]
    probs[-1] = 1.0 - sum(probs[:-1])
    return MixedStrategy(tuple(max(p, 0.0) for p in probs))
