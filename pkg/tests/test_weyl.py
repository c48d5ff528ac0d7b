import pytest
from hypothesis import given, strategies as st

from loopbord.errors import IndexOutOfRange, LengthCapExceeded, NotARoot, OrientationError
from loopbord.rootdata import RootDatum
from loopbord.weyl import (
    BorelSubset,
    RealRoot,
    WeylWord,
    borel_adjacency,
    inversion_set,
    length_and_reduce,
    min_coset_rep,
)

SL2 = RootDatum.named("sl2")
SL3 = RootDatum.named("sl3")
G2 = RootDatum.named("g2")


def W(datum, *letters):
    return WeylWord(datum, letters)


def words(datum, max_len=7):
    return st.lists(st.integers(1, datum.size), max_size=max_len).map(lambda w: WeylWord(datum, w))


def test_act_examples():
    assert W(SL2, 1).act(SL2.coroot(1)) == -SL2.coroot(1)
    assert W(SL2, 2).act(SL2.D) == SL2.D - SL2.coroot(2)
    assert W(SL3, 1, 3, 2, 1).act(SL3.c) == SL3.c


def test_index_out_of_range():
    with pytest.raises(IndexOutOfRange):
        W(SL2, 3)


def test_length_examples():
    n, red = length_and_reduce(W(SL2, 1, 1))
    assert n == 0 and red.letters == ()
    n, red = length_and_reduce(W(SL2, 1, 2, 1))
    assert n == 3 and red.letters == (1, 2, 1)
    n, red = length_and_reduce(W(SL2, 1, 2, 2, 1))
    assert n == 0 and red.letters == ()


def test_braid_relation_sl3():
    n, red = length_and_reduce(W(SL3, 1, 2, 1, 2, 1, 2))
    assert n == 0
    assert W(SL3, 1, 2, 1).same_element(W(SL3, 2, 1, 2))


def test_length_cap():
    with pytest.raises(LengthCapExceeded):
        length_and_reduce(W(SL2, *([1, 2] * 10)), cap=5)


def test_min_coset_rep_examples():
    assert min_coset_rep(W(SL2, 1), [1]).letters == ()
    assert min_coset_rep(W(SL2, 2, 1), [1]).letters == (2,)
    assert min_coset_rep(W(SL2), [2]).letters == ()


def test_borel_adjacency_examples():
    nb, root = borel_adjacency(BorelSubset(W(SL2)), 1)
    assert nb == BorelSubset(W(SL2, 1))
    assert root.coefficients(SL2) == (1, 0)
    _, root = borel_adjacency(BorelSubset(W(SL2, 2)), 1)
    assert root.coefficients(SL2) == (1, 2)
    with pytest.raises(OrientationError):
        borel_adjacency(BorelSubset(W(SL2, 1)), 1)


def test_separating_root_sign():
    B, Bp = BorelSubset(W(SL2)), BorelSubset(W(SL2, 1))
    a1 = RealRoot.from_coefficients(SL2, (1, 0))
    assert B.contains(a1) and not Bp.contains(a1)
    assert Bp.contains(-a1)


def test_not_a_root():
    with pytest.raises(NotARoot):
        RealRoot.from_coefficients(SL3, (2, 0, 0))


@pytest.mark.parametrize("datum", [SL2, SL3, G2])
@given(data=st.data())
def test_length_changes_by_one(datum, data):
    w = data.draw(words(datum))
    i = data.draw(st.integers(1, datum.size))
    n, _ = length_and_reduce(w)
    m, _ = length_and_reduce(w.times(i))
    assert abs(m - n) == 1


@pytest.mark.parametrize("datum", [SL2, SL3])
@given(data=st.data())
def test_reduced_word_same_element(datum, data):
    w = data.draw(words(datum))
    n, red = length_and_reduce(w)
    assert red.same_element(w) and len(red) == n
    assert len(inversion_set(w)) == n
    assert all(r.is_positive() for r in inversion_set(w))


@pytest.mark.parametrize("datum", [SL2, SL3])
@given(data=st.data())
def test_min_rep_law(datum, data):
    w = data.draw(words(datum))
    J = data.draw(st.sets(st.integers(1, datum.size), max_size=datum.size - 1))
    rep = min_coset_rep(w, J)
    assert all(rep.image_of_simple_root(j).is_positive() for j in J)
    # same coset: rep^{-1} w lies in W(J)
    _, u = length_and_reduce(WeylWord(datum, rep.inverse().letters + w.letters))
    assert set(u.letters) <= set(J)


@given(words(SL3))
def test_delta_invariant(w):
    assert w.act(SL3.delta) == SL3.delta


@given(words(SL2, 6))
def test_orbit_below_dominant(w):
    T = SL2.coroot(1) * 1 + 3 * SL2.D  # <T,a1>=2, <T,a2>=1
    assert SL2.dominance_leq(w.act(T), T)
