"""Small exact linear-algebra helpers over the rationals (sympy-backed)."""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import sympy


def _to_sympy(rows: Sequence[Sequence]) -> sympy.Matrix:
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r] for r in rows])


def _to_fraction(x) -> Fraction:
    x = sympy.Rational(x)
    return Fraction(int(x.p), int(x.q))


def solve(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve the square nonsingular system ``rows @ x = rhs`` exactly."""
    m = _to_sympy(rows)
    b = _to_sympy([[v] for v in rhs])
    return [_to_fraction(v) for v in m.LUsolve(b)]


def inverse(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    inv = _to_sympy(rows).inv()
    return [[_to_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]


def determinant(rows: Sequence[Sequence]) -> Fraction:
    if not rows:
        return Fraction(1)
    return _to_fraction(_to_sympy(rows).det())


def nullspace(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    return [[_to_fraction(v) for v in vec] for vec in _to_sympy(rows).nullspace()]
