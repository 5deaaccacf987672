from __future__ import annotations

from fractions import Fraction

import pytest

from src.engine import CrowdSpec, expected_utility, expected_utility_mixed, freq_distribution
from src.errors import SizeMismatchError
from src.game import FrequencyVector, MixedStrategy, Profile

HALF = Fraction(1, 2)


def as_counts(dist):
    return {freq.counts: p for freq, p in dist}


def test_pure_crowd_is_point_mass():
    crowd = CrowdSpec(Profile.symmetric_of(MixedStrategy.pure(2, 0), size=3))
    dist = freq_distribution(crowd, 2)
    assert as_counts(dist) == {(3, 0): 1}


def test_two_uniform_players_binomial():
    crowd = CrowdSpec(Profile.symmetric_of(MixedStrategy((HALF, HALF)), size=2))
    dist = freq_distribution(crowd, 2)
    assert as_counts(dist) == {(2, 0): Fraction(1, 4), (1, 1): HALF, (0, 2): Fraction(1, 4)}
    assert [freq.counts for freq, _ in dist] == [(2, 0), (1, 1), (0, 2)]
    assert dist.mass() == 1


def test_mixed_with_pure_player():
    crowd = CrowdSpec(Profile.of([MixedStrategy.pure(2, 0), MixedStrategy((HALF, HALF))]))
    assert as_counts(freq_distribution(crowd, 2)) == {(2, 0): HALF, (1, 1): HALF}


def test_empty_crowd_is_zero_vector():
    crowd = CrowdSpec(Profile.of([]))
    assert as_counts(freq_distribution(crowd, 3)) == {(0, 0, 0): 1}


def test_pure_defectors_shift_the_support():
    crowd = CrowdSpec(
        Profile.symmetric_of(MixedStrategy.pure(3, 0), size=1),
        defector_config=FrequencyVector((0, 1, 0)),
    )
    assert as_counts(freq_distribution(crowd, 3)) == {(1, 1, 0): 1}


def test_matching_expected_utilities(matching3, uniform3):
    pure_first = Profile.symmetric_of(MixedStrategy.pure(3, 0), size=2)
    assert expected_utility(matching3, "1", CrowdSpec(pure_first)) == 1

    tie = CrowdSpec(
        Profile.symmetric_of(MixedStrategy.pure(3, 0), size=1),
        defector_config=FrequencyVector((0, 1, 0)),
    )
    assert expected_utility(matching3, 0, tie) == 1

    uniform_crowd = CrowdSpec(Profile.symmetric_of(uniform3, size=2))
    assert expected_utility(matching3, 0, uniform_crowd) == Fraction(5, 9)
    assert expected_utility_mixed(matching3, uniform3, uniform_crowd) == Fraction(5, 9)


def test_mixed_expectation_is_linear(matching3):
    crowd = CrowdSpec(
        Profile.of([MixedStrategy((HALF, Fraction(1, 4), Fraction(1, 4)))]),
        defector_profile=Profile.of([MixedStrategy((Fraction(1, 6), Fraction(1, 3), HALF))]),
    )
    first = MixedStrategy((Fraction(1), Fraction(0), Fraction(0)))
    second = MixedStrategy((Fraction(0), Fraction(2, 3), Fraction(1, 3)))
    lam = Fraction(1, 3)
    blend = first.mix(second, 1 - lam)
    lhs = expected_utility_mixed(matching3, blend, crowd)
    rhs = lam * expected_utility_mixed(matching3, first, crowd) + (1 - lam) * expected_utility_mixed(
        matching3, second, crowd
    )
    assert lhs == rhs
    assert expected_utility_mixed(matching3, first, crowd) == expected_utility(matching3, 0, crowd)


def test_crowd_size_must_be_n_minus_one(matching3):
    crowd = CrowdSpec(Profile.symmetric_of(MixedStrategy.pure(3, 0), size=1))
    with pytest.raises(SizeMismatchError):
        expected_utility(matching3, 0, crowd)


def test_crowd_rejects_both_defector_forms():
    with pytest.raises(SizeMismatchError):
        CrowdSpec(
            Profile.of([]),
            defector_config=FrequencyVector((1, 0)),
            defector_profile=Profile.of([MixedStrategy.pure(2, 0)]),
        )


def test_reordering_the_crowd_keeps_the_distribution():
    third = Fraction(1, 3)
    players = [
        MixedStrategy((HALF, HALF, Fraction(0))),
        MixedStrategy.pure(3, 2),
        MixedStrategy((third, third, third)),
        MixedStrategy((Fraction(1, 4), Fraction(0), Fraction(3, 4))),
    ]
    forward = freq_distribution(CrowdSpec(Profile.of(players)), 3)
    shuffled = freq_distribution(CrowdSpec(Profile.of([players[2], players[0], players[3], players[1]])), 3)
    assert as_counts(forward) == as_counts(shuffled)
    assert list(forward) == list(shuffled)
    assert forward.mass() == 1
