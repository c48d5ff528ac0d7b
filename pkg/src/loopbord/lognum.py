"""Exact numbers of the form ``r + sum_p q_p log p``.

Coordinates of torus points such as ``exp(-(1/n) c - r D)`` or the Siegel
threshold ``2/sqrt(3)`` live naturally in the additive group spanned by
the rationals and the logarithms of primes.  This module keeps them in
that form so that every comparison is decided exactly:

* the logarithms of distinct primes are linearly independent over the
  rationals, so a sum ``sum_p q_p log p`` is zero only when every
  ``q_p`` is zero, and its sign is found by comparing integers;
* a mixed value ``r + log P`` with ``r`` a nonzero rational is never zero
  (``e^r`` is transcendental), so interval evaluation at increasing
  precision always terminates with the correct sign.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering

from mpmath.ctx_iv import MPIntervalContext
from sympy import factorint

Rational = (int, Fraction)


def _as_fraction(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, Rational):
        raise TypeError(f"expected a rational, got {type(x).__name__}")
    return Fraction(x)


@total_ordering
class LogNumber:
    __slots__ = ("rational", "logs")

    def __init__(self, rational=0, logs=None):
        self.rational = Fraction(rational)
        items = {}
        for p, q in (logs or {}).items():
            q = Fraction(q)
            if q:
                items[int(p)] = q
        self.logs = tuple(sorted(items.items()))

    # -- constructors -------------------------------------------------
    @classmethod
    def log(cls, q) -> "LogNumber":
        """The exact logarithm of a positive rational."""
        q = _as_fraction(q)
        if q <= 0:
            raise ValueError("log of a non-positive rational")
        logs: dict[int, Fraction] = {}
        for p, e in factorint(q.numerator).items():
            logs[p] = logs.get(p, 0) + e
        for p, e in factorint(q.denominator).items():
            logs[p] = logs.get(p, 0) - e
        return cls(0, logs)

    @classmethod
    def coerce(cls, x) -> "LogNumber":
        if isinstance(x, LogNumber):
            return x
        return cls(_as_fraction(x))

    # -- queries ------------------------------------------------------
    def is_rational(self) -> bool:
        return not self.logs

    def exp_rational(self) -> Fraction | None:
        """``exp(self)`` as a rational when it is one, else ``None``."""
        if self.rational or any(q.denominator != 1 for _, q in self.logs):
            return None
        out = Fraction(1)
        for p, q in self.logs:
            out *= Fraction(p) ** int(q)
        return out

    def sign(self) -> int:
        if not self.logs:
            return (self.rational > 0) - (self.rational < 0)
        if not self.rational:
            # compare prod p^(N q_p) with 1 using integers
            n = math.lcm(*(q.denominator for _, q in self.logs))
            up = down = 1
            for p, q in self.logs:
                e = int(q * n)
                if e > 0:
                    up *= p**e
                else:
                    down *= p ** (-e)
            return (up > down) - (up < down)
        iv = MPIntervalContext()  # private context: no shared precision state
        prec = 64
        while True:
            iv.prec = prec
            val = iv.mpf(self.rational.numerator) / self.rational.denominator
            for p, q in self.logs:
                val += iv.log(iv.mpf(p)) * (iv.mpf(q.numerator) / q.denominator)
            if val.a > 0:
                return 1
            if val.b < 0:
                return -1
            prec *= 2

    def __float__(self) -> float:
        return float(self.rational) + sum(float(q) * math.log(p) for p, q in self.logs)

    # -- arithmetic ---------------------------------------------------
    def _merged(self, other: "LogNumber", scale: int) -> dict:
        d = dict(self.logs)
        for p, q in other.logs:
            d[p] = d.get(p, 0) + scale * q
        return d

    def __add__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return LogNumber(self.rational + other, dict(self.logs))
        if isinstance(other, LogNumber):
            return LogNumber(self.rational + other.rational, self._merged(other, 1))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return LogNumber(-self.rational, {p: -q for p, q in self.logs})

    def __sub__(self, other):
        if isinstance(other, (LogNumber, int, Fraction)) and not isinstance(other, bool):
            return self + (-LogNumber.coerce(other))
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            k = Fraction(other)
            return LogNumber(self.rational * k, {p: q * k for p, q in self.logs})
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return NotImplemented

    # -- comparison ---------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Rational):
            return not self.logs and self.rational == other
        if isinstance(other, LogNumber):
            return self.rational == other.rational and self.logs == other.logs
        return NotImplemented

    def __lt__(self, other):
        if not isinstance(other, (LogNumber, int, Fraction)):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self):
        if not self.logs:
            return hash(self.rational)
        return hash((self.rational, self.logs))

    def __repr__(self):
        parts = [str(self.rational)] if self.rational or not self.logs else []
        parts += [f"{q}*log({p})" for p, q in self.logs]
        return "LogNumber(" + " + ".join(parts) + ")"

    def to_json(self) -> dict:
        from .rationals import fmt

        return {
            "rational": fmt(self.rational),
            "logs": {str(p): fmt(q) for p, q in self.logs},
            "approx": float(self),
        }


class PositiveReal:
    """A positive real ``exp(L)`` with ``L`` a :class:`LogNumber`."""

    __slots__ = ("log",)

    def __init__(self, log: LogNumber):
        self.log = LogNumber.coerce(log)

    @classmethod
    def of(cls, x) -> "PositiveReal":
        if isinstance(x, PositiveReal):
            return x
        return cls(LogNumber.log(x))

    def __float__(self):
        return math.exp(float(self.log))

    def __repr__(self):
        return f"PositiveReal(exp({self.log!r}))"

    def __eq__(self, other):
        if isinstance(other, PositiveReal):
            return self.log == other.log
        return NotImplemented

    def __hash__(self):
        return hash(self.log)


# Default Siegel threshold t0 = 2/sqrt(3), kept exact.
SIEGEL_T0 = PositiveReal(LogNumber(0, {2: 1, 3: Fraction(-1, 2)}))
