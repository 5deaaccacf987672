"""Exact and tolerance-qualified scalars.

Exact mode keeps every utility and probability as a ``Fraction``; numeric mode
stores ``float`` values and compares them with an absolute tolerance.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Any, Iterable, Sequence, Union

from src.errors import MalformedRationalError

Number = Union[Fraction, float]

NUMERIC_EPSILON = 1e-9
SIMPLEX_TOLERANCE = 1e-12


def parse_rational(value: Any, *, numeric: bool = False, where: str = "value") -> Number:
    # bool is an int subclass; reject it before the int branch
    if isinstance(value, bool):
        raise MalformedRationalError(value, where)
    if isinstance(value, Fraction):
        exact = value
    elif isinstance(value, int):
        exact = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise MalformedRationalError(value, where)
        if numeric:
            return value
        exact = Fraction(repr(value))
    elif isinstance(value, str):
        text = value.strip()
        if not text:
            raise MalformedRationalError(value, where)
        try:
            exact = Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise MalformedRationalError(value, where) from exc
    else:
        raise MalformedRationalError(value, where)
    return float(exact) if numeric else exact


def to_mode(value: Number, numeric: bool) -> Number:
    if numeric:
        return float(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    return Fraction(value)


def format_rational(value: Number) -> str:
    if isinstance(value, float):
        return repr(value)
    exact = Fraction(value)
    return f"{exact.numerator}/{exact.denominator}"


def is_numeric(values: Iterable[Number]) -> bool:
    return any(isinstance(v, float) for v in values)


def argmax_members(values: Sequence[Number], tolerance: float = 0.0) -> tuple:
    """Indices attaining the maximum, and the maximum itself.

    With ``tolerance == 0`` membership is exact equality; otherwise every
    entry within ``tolerance`` of the maximum is a member.
    """
    best = max(values)
    if tolerance:
        members = frozenset(i for i, v in enumerate(values) if v >= best - tolerance)
    else:
        members = frozenset(i for i, v in enumerate(values) if v == best)
    return members, best
