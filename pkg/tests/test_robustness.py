from __future__ import annotations

from fractions import Fraction

import pytest

from src.engine import CrowdSpec, expected_utility, expected_utility_mixed
from src.errors import AlphaOutOfRangeError, SizeMismatchError
from src.game import FrequencyVector, MixedStrategy, Profile, make_matching_game
from src.robust import (
    best_response_set,
    defection_index,
    defection_index_chain,
    is_alpha_robust,
    robust_action_set,
)


def test_best_response_sets(matching5, pure):
    tie = best_response_set(matching5, pure(0), FrequencyVector((0, 2, 0)))
    assert tie.actions == frozenset({0, 1})
    assert tie.value == 1

    swamped = best_response_set(matching5, pure(0), FrequencyVector((0, 3, 0)))
    assert swamped.actions == frozenset({1})


def test_alpha_zero_is_plain_best_response(matching5, pure):
    br = best_response_set(matching5, pure(0), FrequencyVector((0, 0, 0)))
    robust = robust_action_set(matching5, pure(0), 0)
    assert robust.actions == br.actions == frozenset({0})
    assert len(robust.per_config_argmax) == 1


def test_robust_action_set_shrinks_with_alpha(matching5, pure):
    two = robust_action_set(matching5, pure(0), 2)
    assert two.actions == frozenset({0})
    assert len(two.per_config_argmax) == 6
    assert 1 not in two.argmax_for(FrequencyVector((2, 0, 0))).actions

    three = robust_action_set(matching5, pure(0), 3)
    assert three.empty
    assert three.argmax_for(FrequencyVector((0, 3, 0))).actions == frozenset({1})
    assert three.argmax_for(FrequencyVector((0, 0, 3))).actions == frozenset({2})


def test_pure_matching_profile_robust_up_to_half(matching5, pure):
    certificate = is_alpha_robust(matching5, pure(0), 2)
    assert certificate.robust
    assert certificate.verdict == "robust"
    player, evidence = certificate.evidence[0]
    assert player == 0
    assert MixedStrategy.pure(3, 0).support <= evidence.actions


def test_not_robust_witness(matching5, pure):
    certificate = is_alpha_robust(matching5, pure(0), 3)
    assert not certificate.robust
    witness = certificate.witness
    assert witness.config == FrequencyVector((0, 3, 0))
    assert witness.deviation == 1
    assert witness.gain == 1
    assert witness.dropped == frozenset({0})


def test_witness_reverifies_as_strict_improvement(matching5, pure):
    certificate = is_alpha_robust(matching5, pure(0), 3)
    witness = certificate.witness
    crowd = CrowdSpec(
        Profile.symmetric_of(MixedStrategy.pure(3, 0), size=1),
        defector_config=witness.config,
    )
    own = expected_utility_mixed(matching5, MixedStrategy.pure(3, 0), crowd)
    better = expected_utility(matching5, witness.deviation, crowd)
    assert better - own == witness.gain > 0


def test_alpha_range(matching5, pure):
    with pytest.raises(AlphaOutOfRangeError):
        is_alpha_robust(matching5, pure(0), 5)
    with pytest.raises(AlphaOutOfRangeError):
        robust_action_set(matching5, pure(0), -1)


def test_alpha_n_minus_one_uses_defectors_only(matching5, pure):
    certificate = is_alpha_robust(matching5, pure(0), 4)
    assert not certificate.robust
    assert certificate.witness.config.total == 4


def test_asymmetric_profile_size_is_checked(matching5):
    profile = Profile.of([MixedStrategy.pure(3, 0)] * 4)
    with pytest.raises(SizeMismatchError):
        is_alpha_robust(matching5, profile, 2)


@pytest.mark.parametrize("n_players, expected", [(3, 1), (5, 2)])
def test_defection_index_of_pure_matching(n_players, expected):
    game = make_matching_game(n_players, 3)
    for action in range(3):
        profile = Profile.symmetric_of(MixedStrategy.pure(3, action))
        assert defection_index(game, profile) == expected == (n_players - 1) // 2


def test_uniform_profile_index_is_zero(matching3, uniform3):
    index, chain = defection_index_chain(matching3, Profile.symmetric_of(uniform3))
    assert index == 0
    assert chain[0].robust
    witness = chain[1].witness
    assert witness.config == FrequencyVector((1, 0, 0))
    assert witness.deviation == 0
    assert witness.gain == Fraction(4, 9)
    assert witness.dropped == frozenset({1, 2})


def test_non_nash_profile_index_is_minus_one(matching3):
    profile = Profile.of([MixedStrategy.pure(3, 0), MixedStrategy.pure(3, 0), MixedStrategy.pure(3, 2)])
    index, chain = defection_index_chain(matching3, profile)
    assert index == -1
    assert len(chain) == 1
    assert chain[0].witness.player == 2


def test_verdict_ignores_player_labels(matching5):
    a = MixedStrategy((Fraction(1, 2), Fraction(1, 2), Fraction(0)))
    b = MixedStrategy.pure(3, 0)
    c = MixedStrategy((Fraction(1, 3), Fraction(1, 3), Fraction(1, 3)))
    first = is_alpha_robust(matching5, Profile.of([a, b, c]), 2)
    second = is_alpha_robust(matching5, Profile.of([c, a, b]), 2)
    assert first.robust == second.robust


def test_numeric_mode_is_tolerance_qualified():
    game = make_matching_game(5, 3, numeric=True)
    certificate = is_alpha_robust(game, Profile.symmetric_of(MixedStrategy.pure(3, 0, numeric=True)), 2)
    assert certificate.robust
    assert certificate.tolerance_qualified
