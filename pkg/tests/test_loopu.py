import random
from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from loopbord.corners import TorusPoint
from loopbord.errors import NotUnipotentShape, OrderMismatch, SchemaError
from loopbord.loopu import (
    LOOP_ROTATION,
    TORUS,
    IMCoords,
    TruncatedSeries,
    chi,
    chi_neg,
    determinant,
    im_coords,
    in_omega0,
    mat_mul,
    matrix_of,
    parse_series,
    scale,
    siegel_membership,
    to_matrix,
    u_inverse,
    u_multiply,
    u_reduce,
)
from loopbord.rootdata import RootDatum
from loopbord.sweep import random_imcoords

S = TruncatedSeries.of
SL2 = RootDatum.named("sl2")


@st.composite
def imcoords(draw, N=None):
    N = N or draw(st.integers(1, 8))
    seed = draw(st.integers(0, 2**32))
    return random_imcoords(random.Random(seed), N)


def test_series_arithmetic():
    a = S([1, 1], 4)
    assert (a * a.inverse()) == S([1], 4)
    assert a * a == S([1, 2, 1], 4)
    assert S([2, 4], 3).substitute(F(1, 2)) == S([2, 2], 3)
    assert parse_series("1/2,0,3", 4) == S([F(1, 2), 0, 3], 4)
    with pytest.raises(SchemaError):
        S([1, 0, 0, 5], 2)
    with pytest.raises(OrderMismatch):
        S([1], 2) + S([1], 3)
    with pytest.raises(ZeroDivisionError):
        S([0, 1], 3).inverse()


def test_im_coords_examples():
    assert im_coords(to_matrix(IMCoords.identity(4))) == IMCoords.identity(4)
    M = matrix_of([[[1], [3, 1]], [[0], [1]]], 4)
    assert im_coords(M) == IMCoords.of([3, 1], [1], [0], 4)
    M = mat_mul(chi(S([1], 4)), chi_neg(S([0, 1], 4)))
    assert M == matrix_of([[[1, 1], [1]], [[0, 1], [1]]], 4)
    assert im_coords(M) == IMCoords.of([1], [1], [0, 1], 4)


def test_not_unipotent_shape():
    with pytest.raises(NotUnipotentShape):
        im_coords(matrix_of([[[1], [0]], [[1], [1]]], 3))
    with pytest.raises(NotUnipotentShape):
        im_coords(matrix_of([[[2], [0]], [[0], [1]]], 3))
    with pytest.raises(NotUnipotentShape):
        IMCoords.of([0], [2], [0], 3)
    with pytest.raises(NotUnipotentShape):
        IMCoords.of([0], [1], [1], 3)


def test_multiply_examples():
    u = IMCoords.of([1, 2], [1, 3], [0, 5], 5)
    assert u_multiply(u, IMCoords.identity(5)) == u
    assert u_multiply(IMCoords.identity(5), u) == u
    x = IMCoords.of([1, 2], [1], [0], 5)
    y = IMCoords.of([3, 0, 7], [1], [0], 5)
    assert u_multiply(x, y) == IMCoords.of([4, 2, 7], [1], [0], 5)
    v = IMCoords.of([1], [1], [0, 1], 3)
    M = to_matrix(v)
    assert u_multiply(v, v) == im_coords(mat_mul(M, M))
    with pytest.raises(OrderMismatch):
        u_multiply(v, IMCoords.identity(4))


@given(imcoords())
def test_round_trips(u):
    M = to_matrix(u)
    assert determinant(M) == S([1], u.N)
    assert im_coords(M) == u
    assert to_matrix(im_coords(M)) == M
    assert u_multiply(u, u_inverse(u)) == IMCoords.identity(u.N)


@given(st.integers(1, 8), st.integers(0, 2**32))
def test_associativity(N, seed):
    rng = random.Random(seed)
    a, b, c = (random_imcoords(rng, N) for _ in range(3))
    assert u_multiply(u_multiply(a, b), c) == u_multiply(a, u_multiply(b, c))


@given(st.integers(1, 8), st.integers(0, 2**32))
def test_chi_additivity(N, seed):
    rng = random.Random(seed)
    s1, s2 = (random_imcoords(rng, N).sigma for _ in range(2))
    assert mat_mul(chi(s1), chi(s2)) == chi(s1 + s2)
    t1 = S([0] + list(s1.coeffs[1:]), N)
    t2 = S([0] + list(s2.coeffs[1:]), N)
    assert mat_mul(chi_neg(t1), chi_neg(t2)) == chi_neg(t1 + t2)


def test_scale_examples():
    u = IMCoords.of([1, 4], [1, 2], [0, 3], 4)
    assert scale(u, 1, LOOP_ROTATION) == u and scale(u, 1, TORUS) == u
    assert scale(IMCoords.of([1, 4], [1], [0], 4), F(1, 2)).sigma == S([1, 2], 4)
    assert scale(IMCoords.of([1], [1], [0, 1], 4), 2, TORUS) == IMCoords.of([4], [1], [0, F(1, 4)], 4)
    with pytest.raises(SchemaError):
        scale(u, 2, "dilation")


@given(st.integers(1, 8), st.integers(0, 2**32), st.sampled_from([LOOP_ROTATION, TORUS]),
       st.sampled_from([F(1, 2), F(-3), F(2, 7)]))
def test_scale_homomorphism(N, seed, kind, s):
    rng = random.Random(seed)
    a, b = random_imcoords(rng, N), random_imcoords(rng, N)
    assert scale(u_multiply(a, b), s, kind) == u_multiply(scale(a, s, kind), scale(b, s, kind))


def test_reduce_examples():
    r = u_reduce(IMCoords.of([F(7, 10)], [1], [0], 1))
    assert r.gamma == IMCoords.of([-1], [1], [0], 1)
    assert r.reduced.sigma == S([F(-3, 10)], 1)
    r = u_reduce(IMCoords.of([F(7, 10), F(13, 10)], [1], [0], 2))
    assert r.reduced.sigma == S([F(-3, 10), F(3, 10)], 2)
    u = IMCoords.of([3, -2], [1, 4], [0, 7, 1], 3)
    r = u_reduce(u)
    assert r.reduced == IMCoords.identity(3)
    assert r.gamma == u_inverse(u)


@given(imcoords())
def test_reduction_soundness(u):
    r = u_reduce(u)
    assert in_omega0(r.reduced)
    assert r.gamma.is_integral()
    assert u_multiply(u, r.gamma) == r.reduced
    assert u_multiply(r.reduced, u_inverse(r.gamma)) == u


@given(imcoords())
def test_reduction_idempotent(u):
    r = u_reduce(u).reduced
    again = u_reduce(r)
    assert again.reduced == r and again.gamma == IMCoords.identity(u.N) and again.steps == ()


def test_siegel_membership_examples():
    half = TorusPoint.from_multiplicative(SL2, [F(1, 2), F(1, 2)], 1)
    assert siegel_membership(half, IMCoords.identity(3), 1)
    assert not siegel_membership(half, IMCoords.of([F(3, 4)], [1], [0], 3), 1)
    big = TorusPoint.from_multiplicative(SL2, [2, F(1, 8)], 1)
    assert not siegel_membership(big, IMCoords.identity(3), 1)
    edge = TorusPoint.from_multiplicative(SL2, [1, F(1, 2)], 1)
    assert not siegel_membership(edge, IMCoords.identity(3), 1)
    assert siegel_membership(half, IMCoords.of([F(1, 2)], [1], [0], 3), 1)
