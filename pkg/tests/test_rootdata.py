from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from conftest import rationals
from loopbord.errors import DatumMismatch, NotGCM, UnsupportedType
from loopbord.rootdata import AFFINE_G2, CartanVector, RootDatum, classify_gcm, pair

SL2 = RootDatum.named("sl2")
SL3 = RootDatum.named("sl3")
ALL = [RootDatum.named(n) for n in ("sl2", "sl3", "sl4", "g2")]


def test_classify_examples():
    assert classify_gcm([[2, -2], [-2, 2]]).to_json() == {"kind": "affine-untwisted", "d": [1, 1], "d_check": [1, 1]}
    assert classify_gcm([[2, -1], [-1, 2]]).kind == "finite"
    c = classify_gcm([[2, -1, -1], [-1, 2, -1], [-1, -1, 2]])
    assert c.kind == "affine-untwisted" and c.d == (1, 1, 1)


def test_classify_g2_and_rejections():
    c = classify_gcm(AFFINE_G2)
    assert c.d == (2, 3, 1) and c.d_check == (2, 1, 1)
    transpose = [list(r) for r in zip(*AFFINE_G2)]
    with pytest.raises(UnsupportedType):
        classify_gcm(transpose)
    with pytest.raises(UnsupportedType):
        classify_gcm([[2, -3], [-3, 2]])
    with pytest.raises(NotGCM):
        classify_gcm([[2, -1], [0, 2]])
    with pytest.raises(NotGCM):
        classify_gcm([[1, 0], [0, 2]])


def test_coweight_basis_examples():
    (l1, l2), psi = SL2.coweight_basis()
    assert l1 == SL2.coroot(1) * F(1, 2) + SL2.D
    assert l2 == SL2.D
    assert psi == SL2.coroot(1) + SL2.coroot(2) == SL2.c
    lv, psi3 = SL3.coweight_basis()
    assert lv[2] == SL3.D and psi3 == SL3.c


@pytest.mark.parametrize("datum", ALL)
def test_coweight_duality(datum):
    lv, psi = datum.coweight_basis()
    for i, v in enumerate(lv, start=1):
        for j in datum.indices:
            assert pair(v, datum.simple_root(j)) == (i == j)
    assert all(pair(psi, datum.simple_root(j)) == 0 for j in datum.indices)


def test_pairing_examples():
    for j in SL2.indices:
        assert pair(SL2.D, SL2.fundamental_weight(j)) == 0
    assert SL2.kac_pair(SL2.c, SL2.c) == 0
    assert SL2.kac_pair(SL2.c, SL2.D) == SL2.d[-1]
    m, r = F(3, 7), F(5, 2)
    assert pair(m * SL2.c - r * SL2.D, SL2.delta) == -r


def test_datum_mismatch():
    with pytest.raises(DatumMismatch):
        pair(SL2.D, SL3.delta)


@pytest.mark.parametrize("datum", ALL)
def test_rho(datum):
    assert all(pair(datum.coroot(i), datum.rho) == 1 for i in datum.indices)
    assert pair(datum.D, datum.rho) == 0
    rho_o, h = datum.rho_decomposition_classical()
    assert h == datum.h_check
    assert rho_o + h * datum.fundamental_weight(datum.size) == datum.rho


def test_h_check_values():
    assert SL2.h_check == 2 and SL3.h_check == 3 and RootDatum(AFFINE_G2).h_check == 4


def test_tits_cone():
    assert SL2.tits_cone_contains(-SL2.D)
    assert not SL2.tits_cone_contains(SL2.c)
    assert not SL2.tits_cone_contains(SL2.coroot(1))


@pytest.mark.parametrize("datum", ALL)
def test_kac_form_symmetric_and_nu(datum):
    basis = [datum.coroot(i) for i in datum.indices] + [datum.D]
    for x in basis:
        for y in basis:
            assert datum.kac_pair(x, y) == datum.kac_pair(y, x)
    for i in datum.indices:
        nu = datum.nu(datum.coroot(i))
        assert nu == datum.epsilon[i - 1] * datum.simple_root(i)
    assert datum.kac_pair(datum.D, datum.D) == 0


def _vec(datum):
    return st.lists(rationals(), min_size=datum.size + 1, max_size=datum.size + 1).map(
        lambda c: CartanVector(datum, c)
    )


@pytest.mark.parametrize("datum", [SL2, SL3])
@given(data=st.data())
def test_coweight_round_trip(datum, data):
    v = data.draw(_vec(datum))
    p, m = v.coweight_coords()
    assert CartanVector.from_coweight(datum, p, m) == v


@given(st.lists(rationals(), min_size=3, max_size=3))
def test_delta_kills_coroot_span(c):
    x = SL3.coroot_combination(c)
    assert pair(x, SL3.delta) == 0


@given(st.lists(st.integers(0, 5), min_size=3, max_size=3), st.lists(st.integers(0, 5), min_size=3, max_size=3))
def test_dominance_antisymmetric(a, b):
    x = SL2.coroot_combination(a[:2]) + a[2] * SL2.D
    y = x + SL2.coroot_combination(b[:2])
    assert SL2.dominance_leq(x, y)
    if SL2.dominance_leq(y, x):
        assert x == y
