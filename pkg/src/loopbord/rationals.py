"""Parsing and formatting of exact rationals for the wire format."""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable

from .errors import SchemaError

_RAT = re.compile(r"^\s*[+-]?\d+(\s*/\s*\d+)?\s*$")


def parse_rational(value) -> Fraction:
    """Accept ints, Fractions and strings like ``"3"``, ``"-7/2"``."""
    if isinstance(value, bool):
        raise SchemaError(f"expected a rational, got {value!r}")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str) and _RAT.match(value):
        num, _, den = value.replace(" ", "").partition("/")
        if den and int(den) == 0:
            raise SchemaError(f"zero denominator in {value!r}")
        return Fraction(int(num), int(den) if den else 1)
    raise SchemaError(f"expected a rational 'p/q' string, got {value!r}")


def fmt(q) -> str:
    """Canonical ``p/q`` string (``p`` alone when the denominator is 1)."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fmt_all(qs: Iterable) -> list[str]:
    return [fmt(q) for q in qs]


def nearest_integer(q: Fraction) -> int:
    """An integer ``n`` with ``|q - n| <= 1/2``; 0 whenever ``|q| <= 1/2``, so rounding is idempotent."""
    if abs(q) <= Fraction(1, 2):
        return 0
    return (q + Fraction(1, 2)).__floor__()
