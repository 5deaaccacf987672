"""Desk-scale acceptance runs over builtin and random table games."""
from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest

from src.checks import direction_invariance_check, lemma2_check
from src.engine import CrowdSpec, expected_utility, expected_utility_mixed, freq_distribution
from src.game import (
    FrequencyVector,
    MixedStrategy,
    Profile,
    enumerate_compositions,
    make_matching_game,
    make_random_game,
)
from src.oracle import oracle_defection_index, oracle_freq_dist, oracle_is_robust, oracle_pure_nash
from src.reports import index_document
from src.robust import defection_index, defection_index_chain, is_alpha_robust, robust_action_set
from src.search import find_pure_robust
from src.tools import SeedSplitter

pytestmark = pytest.mark.slow


def random_strategy(rng, m: int, denominator: int = 12) -> MixedStrategy:
    cuts = sorted(int(x) for x in rng.integers(0, denominator + 1, size=m - 1))
    bounds = [0] + cuts + [denominator]
    return MixedStrategy(tuple(Fraction(bounds[i + 1] - bounds[i], denominator) for i in range(m)))


def random_corpus(count: int = 100):
    streams = SeedSplitter(11)
    for index in range(count):
        rng = streams.generator("corpus", index)
        n_players = int(rng.integers(2, 6))
        m = int(rng.integers(2, 4))
        yield make_random_game(n_players, m, seed=index)


def corpus_profiles(game):
    profiles = [Profile.symmetric_of(MixedStrategy.pure(game.m, a)) for a in range(game.m)]
    profiles.append(Profile.symmetric_of(MixedStrategy.uniform(game.m)))
    return profiles


@pytest.mark.parametrize("n_players", [3, 5, 7, 9])
def test_matching_pure_profiles_are_half_robust(n_players):
    game = make_matching_game(n_players, 3)
    for action in range(3):
        profile = Profile.symmetric_of(MixedStrategy.pure(3, action))
        assert defection_index(game, profile) == (n_players - 1) // 2


def test_matching_pure_nash_at_alpha_zero(matching3):
    found = [c.assignment for c, _ in find_pure_robust(matching3, 0).robust_profiles]
    symmetric = [a for a in found if max(a) == 3]
    assert symmetric == [FrequencyVector((3, 0, 0)), FrequencyVector((0, 3, 0)), FrequencyVector((0, 0, 3))]
    assert [c.assignment for c in oracle_pure_nash(matching3)] == found


def test_uniform_profile_index_is_flagged(matching3, uniform3):
    profile = Profile.symmetric_of(uniform3)
    index, chain = defection_index_chain(matching3, profile)
    assert index == oracle_defection_index(matching3, profile) == 0
    document = index_document(matching3, index, chain, expected=1, oracle_index=0)
    assert document.discrepancy


def test_freq_dist_oracle_equivalence():
    rng = np.random.default_rng(2024)
    for _ in range(500):
        n_players = int(rng.integers(2, 7))
        m = int(rng.integers(1, 4))
        crowd = CrowdSpec(Profile.of([random_strategy(rng, m) for _ in range(n_players - 1)]))
        assert freq_distribution(crowd, m) == oracle_freq_dist(crowd, m)


def test_pure_defector_reduction_and_monotonicity():
    for game in random_corpus():
        for profile in corpus_profiles(game):
            verdicts = []
            for alpha in range(game.n_players):
                robust = is_alpha_robust(game, profile, alpha).robust
                verdicts.append(robust)
                oracle = oracle_is_robust(game, profile, alpha, mixed_samples=100 if robust else 0, seed=7)
                assert oracle.verdict == robust
                assert oracle.mixed_contradictions == 0
            assert verdicts == sorted(verdicts, reverse=True)


def test_sufficiency_checks_are_sound():
    for game in random_corpus():
        for profile in corpus_profiles(game):
            for alpha in range(game.n_players):
                robust_set = robust_action_set(game, profile, alpha)
                for base in enumerate_compositions(alpha, game.m):
                    sensitivity = lemma2_check(game, profile, alpha, base)
                    if sensitivity.holds:
                        assert sensitivity.anchor in robust_set.actions
                direction = direction_invariance_check(game, profile, alpha)
                if direction.invariant:
                    per_config = {br.actions for _, br in robust_set.per_config_argmax}
                    assert per_config == {robust_set.actions}
                    assert not robust_set.empty


def test_witnesses_are_strict_improvements():
    for game in random_corpus():
        for profile in corpus_profiles(game):
            for alpha in range(game.n_players):
                certificate = is_alpha_robust(game, profile, alpha)
                if certificate.robust:
                    continue
                witness = certificate.witness
                normals = profile.sized(game.n_players - alpha)
                own = normals.strategy(witness.player)
                crowd = CrowdSpec(normals.without(witness.player), defector_config=witness.config)
                gain = expected_utility(game, witness.deviation, crowd) - expected_utility_mixed(game, own, crowd)
                assert gain == witness.gain
                assert gain > 0
