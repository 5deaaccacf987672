from __future__ import annotations

import json
import sys
from fractions import Fraction
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.game import MixedStrategy, Profile, make_independent_game, make_matching_game  # noqa: E402


@pytest.fixture(scope="session")
def matching3():
    return make_matching_game(3, 3)


@pytest.fixture(scope="session")
def matching5():
    return make_matching_game(5, 3)


@pytest.fixture
def pure():
    def build(action: int, size=None) -> Profile:
        return Profile.symmetric_of(MixedStrategy.pure(3, action), size=size)

    return build


@pytest.fixture
def independent_game():
    return make_independent_game(4, ["1", "2", "3"])


@pytest.fixture
def uniform3():
    return MixedStrategy((Fraction(1, 3),) * 3)


@pytest.fixture
def write_json(tmp_path):
    def write(name: str, payload) -> Path:
        path = tmp_path / name
        path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
        return path

    return write
