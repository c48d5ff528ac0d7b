from fractions import Fraction as F
from itertools import combinations

import pytest

from loopbord.errors import NestingError, NotARoot
from loopbord.parabolic import (
    NILPOTENT,
    OUTSIDE,
    SEMISIMPLE,
    levi_coweights,
    null_subspace_basis,
    raghunathan,
    rho_data,
    rho_of,
    rho_PQ,
    rho_PQ_residuals,
    root_in_PJ,
)
from loopbord.rootdata import Functional, RootDatum, pair
from loopbord.weyl import RealRoot

SL2 = RootDatum.named("sl2")
SL3 = RootDatum.named("sl3")
ALL = [RootDatum.named(n) for n in ("sl2", "sl3", "sl4", "g2")]


def proper_subsets(datum):
    I = list(datum.indices)
    for k in range(len(I)):
        yield from combinations(I, k)


def lam(datum, *coeffs):
    return Functional(datum, list(coeffs))


def test_rho_data_sl2_J1():
    rd = rho_data(SL2, [1])
    assert rd.rho_of_P == lam(SL2, 1, -1, 0)
    assert rd.rho_P == lam(SL2, 0, 2, 0)
    assert rd.kappa == {2: 2} and rd.dD == 0
    assert rd.rho_P == SL2.h_check * SL2.fundamental_weight(2)


def test_rho_data_sl2_J2():
    rd = rho_data(SL2, [2])
    assert rd.rho_P == lam(SL2, 2, 0, F(-1, 2))
    assert rd.kappa == {1: 2} and rd.dD == F(1, 2)


def test_rho_data_empty():
    rd = rho_data(SL3, [])
    assert rd.rho_of_P == SL3.zero_functional() and rd.rho_P == SL3.rho


@pytest.mark.parametrize("datum", ALL)
def test_rho_P_identity_exhaustive(datum):
    basis = [datum.coroot(i) for i in datum.indices] + [datum.D]
    for J in proper_subsets(datum):
        rd = rho_data(datum, J)
        form = datum.zero_functional()
        for i, k in rd.kappa.items():
            form = form + k * datum.fundamental_weight(i)
        form = form - rd.dD * datum.delta
        for h in basis:
            assert pair(h, form) == pair(h, datum.rho - rho_of(datum, J))
        assert all(k >= 0 for k in rd.kappa.values()) and rd.dD >= 0


@pytest.mark.parametrize("datum", ALL)
def test_levi_coweights_dual(datum):
    for J in proper_subsets(datum):
        cw = levi_coweights(datum, J)
        for j in J:
            for i in J:
                assert pair(cw[j], datum.simple_root(i)) == (i == j)


@pytest.mark.parametrize("datum", ALL)
def test_rho_PQ_residuals_vanish(datum):
    for K in list(proper_subsets(datum)) + [tuple(datum.indices)]:
        for k in range(len(K) + 1):
            if k == datum.size:
                continue
            for J in combinations(K, k):
                res = rho_PQ_residuals(datum, J, K)
                assert all(v == 0 for v in res["Q_null"] + res["P_null"])


def test_rho_PQ_examples():
    assert all(pair(Z, rho_PQ(SL3, [1], [1])) == 0 for Z in null_subspace_basis(SL3, [1]))
    res = rho_PQ_residuals(SL3, [1], [1, 2])
    assert all(v == 0 for v in res["Q_null"])
    full = tuple(SL2.indices)
    assert rho_PQ(SL2, [1], full) == SL2.rho


def test_rho_PQ_full_is_rho_P_on_P_null():
    full = tuple(SL3.indices)
    for J in proper_subsets(SL3):
        diff = rho_PQ(SL3, J, full) - rho_data(SL3, J).rho_P
        assert all(pair(Z, diff) == 0 for Z in null_subspace_basis(SL3, J))


def test_rho_PQ_nesting():
    with pytest.raises(NestingError):
        rho_PQ(SL3, [1, 2], [1])


@pytest.mark.parametrize("datum", ALL)
def test_maximal_parabolic_proportional(datum):
    for i in datum.indices:
        J = tuple(j for j in datum.indices if j != i)
        rd = rho_data(datum, J)
        kappa = rd.kappa[i]
        assert kappa > 0
        for j in datum.indices:
            assert pair(datum.coroot(j), rd.rho_P) == kappa * (i == j)


def test_raghunathan_examples():
    coeffs, mu = raghunathan(SL2, 2, [1])
    assert coeffs == {1: 0} and mu == SL2.fundamental_weight(2)
    coeffs, mu = raghunathan(SL2, 1, [1])
    assert coeffs == {1: F(1, 2)} and mu == SL2.fundamental_weight(2)
    coeffs, mu = raghunathan(SL3, 1, [1, 2])
    assert coeffs == {1: F(2, 3), 2: F(1, 3)}
    assert all(pair(SL3.coroot(i), mu) >= 0 for i in SL3.indices)


@pytest.mark.parametrize("datum", ALL)
def test_raghunathan_contracts(datum):
    for J in proper_subsets(datum):
        for d in datum.indices:
            coeffs, mu = raghunathan(datum, d, J)
            recon = mu
            for j, c in coeffs.items():
                recon = recon + c * datum.simple_root(j)
            assert recon == datum.fundamental_weight(d)
            assert all(pair(datum.coroot(j), mu) == 0 for j in J)


def test_root_in_PJ_examples():
    a1 = RealRoot.from_coefficients(SL2, (1, 0))
    a2 = RealRoot.from_coefficients(SL2, (0, 1))
    assert root_in_PJ(SL2, a1, [1]) == SEMISIMPLE
    assert root_in_PJ(SL2, -a2, [1]) == OUTSIDE
    assert root_in_PJ(SL2, -a1, [1]) == SEMISIMPLE
    assert root_in_PJ(SL2, RealRoot((0,), 1), [1]) == NILPOTENT


def _roots(datum, height=8, level=4):
    out = []
    for n in range(-level, level + 1):
        for fin in datum.finite_roots + tuple(tuple(-x for x in r) for r in datum.finite_roots):
            out.append(RealRoot(fin, n))
        if n:
            out.append(RealRoot((0,) * datum.ell, n))
    return [r for r in out if sum(abs(x) for x in r.coefficients(datum)) <= height]


@pytest.mark.parametrize("datum", [SL2, SL3])
def test_sub_parabolic_correspondence(datum):
    """Levi roots of Q stay Levi; nilpotent roots of P are those of Q or of P inside M_Q."""
    for K in proper_subsets(datum):
        for k in range(len(K) + 1):
            for J in combinations(K, k):
                for r in _roots(datum):
                    inP, inQ = root_in_PJ(datum, r, J), root_in_PJ(datum, r, K)
                    if inP == SEMISIMPLE:
                        assert inQ == SEMISIMPLE
                    if inP == NILPOTENT:
                        assert inQ in (NILPOTENT, SEMISIMPLE)
                    if inQ == NILPOTENT:
                        assert inP == NILPOTENT


def test_root_in_PJ_rejects_non_roots():
    with pytest.raises(NotARoot):
        root_in_PJ(SL2, RealRoot((0,), 0), [1])
