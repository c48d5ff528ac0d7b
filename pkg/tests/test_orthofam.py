import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from loopbord.errors import ChainLeavesSupport, EmptySupport, NotDominant
from loopbord.halfplane import HPoint
from loopbord.orthofam import (
    OrthogonalFamily,
    chain_witness,
    from_weyl_orbit,
    halfplane_dominance_gap,
    halfplane_family,
    resum_witness,
    verify_family,
)
from loopbord.rootdata import CartanVector, RootDatum
from loopbord.weyl import BorelSubset, WeylWord

SL2 = RootDatum.named("sl2")
SL3 = RootDatum.named("sl3")


def B(datum, *letters):
    return BorelSubset(WeylWord(datum, letters))


def test_constant_family_valid_not_regular():
    Y = SL2.coroot(1) - 2 * SL2.D
    f = OrthogonalFamily.from_pairs(SL2, [((), Y), ((1,), Y), ((2,), Y)])
    v = verify_family(f)
    assert v.valid and not v.regular


def test_violation_example():
    f = OrthogonalFamily.from_pairs(SL2, [((), SL2.zero_vector()), ((1,), SL2.coroot(1))])
    v = verify_family(f)
    assert not v.valid
    ((_, _, r),) = v.violations
    assert r == -1


def test_non_proportional_difference_is_a_violation():
    f = OrthogonalFamily.from_pairs(SL2, [((), SL2.D), ((1,), SL2.zero_vector())])
    ((_, _, r),) = verify_family(f).violations
    assert r is None


def test_empty_support():
    with pytest.raises(EmptySupport):
        verify_family(OrthogonalFamily.from_pairs(SL2, [((), SL2.D)]))


def test_orbit_of_D():
    f = from_weyl_orbit(SL2.D, 1)
    assert f.values[B(SL2)] == SL2.D
    assert f.values[B(SL2, 2)] == SL2.D - SL2.coroot(2)
    v = verify_family(from_weyl_orbit(SL2.D, 3))
    assert v.valid and not v.regular


def test_orbit_zero_is_constant():
    f = from_weyl_orbit(SL2.zero_vector(), 2)
    assert set(f.values.values()) == {SL2.zero_vector()}


def test_orbit_regular_example():
    T = SL2.coroot(1) / 2 + 2 * SL2.D
    assert verify_family(from_weyl_orbit(T, 3)).regular


def test_not_dominant():
    with pytest.raises(NotDominant):
        from_weyl_orbit(-SL2.D, 1)


def test_chain_witness_examples():
    T = SL2.coroot(1) / 2 + 2 * SL2.D
    f = from_weyl_orbit(T, 3)
    assert chain_witness(f, B(SL2, 1), B(SL2, 1)) == {}
    w = chain_witness(f, B(SL2), B(SL2, 1))
    assert list(w.values()) == [1]
    w = chain_witness(f, B(SL2), B(SL2, 2, 1))
    assert len(w) == 2 and all(n >= 0 for n in w.values())
    assert resum_witness(SL2, w) == f.values[B(SL2)] - f.values[B(SL2, 2, 1)]
    with pytest.raises(ChainLeavesSupport):
        chain_witness(from_weyl_orbit(T, 1), B(SL2), B(SL2, 2, 1))


def _dominant(datum, rng):
    p = [F(rng.randint(0, 6), rng.randint(1, 4)) for _ in datum.indices]
    return CartanVector.from_coweight(datum, p, F(rng.randint(-3, 3)))


@pytest.mark.parametrize("datum,L", [(SL2, 6), (SL3, 4)])
def test_random_orbit_families_and_witnesses(datum, L):
    rng = random.Random(5)
    for _ in range(8):
        T = _dominant(datum, rng)
        f = from_weyl_orbit(T, L)
        assert verify_family(f).valid
        keys = list(f.values)
        for _ in range(10):
            b1, b2 = rng.choice(keys), rng.choice(keys)
            try:
                w = chain_witness(f, b1, b2)
            except ChainLeavesSupport:
                continue
            assert all(n >= 0 for n in w.values())
            assert all(b1.contains(root) and b2.contains(-root) for root in w)
            assert resum_witness(datum, w) == f.values[b1] - f.values[b2]


@given(rationals(50), rationals(50, positive=True))
def test_halfplane_family_inequality(x, y):
    z = HPoint(x, y)
    fam = halfplane_family(z)
    assert set(fam) == {"H_B(z)", "w.H_B(zw)"}
    assert halfplane_dominance_gap(z) >= 0
