import math
from fractions import Fraction as F

from hypothesis import given, strategies as st

from conftest import rationals
from loopbord.lognum import SIEGEL_T0, LogNumber, PositiveReal


def test_log_arithmetic_exact():
    a = LogNumber.log(F(12))
    b = LogNumber.log(2) * 2 + LogNumber.log(3)
    assert a == b
    assert LogNumber.log(1) == LogNumber()
    assert (LogNumber.log(F(4, 9)) * F(1, 2)).exp_rational() == F(2, 3)


def test_sign_of_near_cancellations():
    # log 2 * 1000 vs log 3 * 631: 2^1000 < 3^631
    x = LogNumber.log(2) * 1000 - LogNumber.log(3) * 631
    assert x.sign() == -1
    y = LogNumber(F(1), {}) - LogNumber.log(3)  # 1 - log 3 < 0
    assert y.sign() == -1


def test_siegel_constant():
    assert math.isclose(float(SIEGEL_T0), 2 / math.sqrt(3))
    assert PositiveReal.of(1) == PositiveReal(LogNumber())


@given(rationals(100, positive=True), rationals(100, positive=True))
def test_log_order_matches_rationals(p, q):
    assert (LogNumber.log(p) < LogNumber.log(q)) == (p < q)
    assert (LogNumber.log(p) - LogNumber.log(q)).sign() == (p > q) - (p < q)


@given(rationals(20), rationals(50, positive=True))
def test_mixed_sign_matches_float(c, q):
    x = LogNumber(c, {}) + LogNumber.log(q)
    f = float(c) + math.log(q)
    if abs(f) > 1e-9:
        assert x.sign() == (1 if f > 0 else -1)
