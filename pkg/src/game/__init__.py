from .compositions import (
    DEFAULT_MAX_COMPOSITIONS,
    bounded_compositions,
    composition_count,
    enumerate_compositions,
)
from .generators import (
    make_independent_game,
    make_matching_game,
    make_random_game,
    matching_utility,
)
from .io import dump_game, load_game, make_table_game, parse_profile_spec, parse_strategy
from .model import ActionSet, FrequencyVector, Game, MixedStrategy, Profile
from .numbers import Number, format_rational, parse_rational
from .validation import ValidationReport, validate_game

__all__ = [
    "DEFAULT_MAX_COMPOSITIONS",
    "ActionSet",
    "FrequencyVector",
    "Game",
    "MixedStrategy",
    "Number",
    "Profile",
    "ValidationReport",
    "bounded_compositions",
    "composition_count",
    "dump_game",
    "enumerate_compositions",
    "format_rational",
    "load_game",
    "make_independent_game",
    "make_matching_game",
    "make_random_game",
    "make_table_game",
    "matching_utility",
    "parse_profile_spec",
    "parse_rational",
    "parse_strategy",
    "validate_game",
]
