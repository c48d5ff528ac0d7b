"""Standard parabolic subsets ``P_J`` and their rho-functionals.

For ``J`` a proper subset, ``A(J)`` is of finite type.  The fundamental
weights ``omega^J_j`` of the Levi are always computed as ambient functionals
in the span of ``{a_k : k in J}``; restriction to a subspace is done by
evaluation only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from . import linalg
from .errors import NestingError
from .rationals import fmt
from .rootdata import CartanVector, Functional, RootDatum, pair
from .weyl import RealRoot

SEMISIMPLE = "semisimple"
NILPOTENT = "nilpotent"
OUTSIDE = "outside"


def _proper(datum: RootDatum, J: Iterable[int]) -> tuple[int, ...]:
    J = datum.check_subset(J)
    if len(J) == datum.size:
        raise NestingError("J must be a proper subset of I")
    return tuple(sorted(J))


@lru_cache(maxsize=None)
def _levi_inverse(datum: RootDatum, J: tuple[int, ...]) -> tuple[tuple[Fraction, ...], ...]:
    sub = [[datum.a(i, j) for j in J] for i in J]
    return tuple(tuple(r) for r in linalg.inverse(sub))


def levi_weight_coeffs(datum: RootDatum, J: Iterable[int], j: int) -> dict[int, Fraction]:
    """Coefficients ``c`` with ``omega^J_j = sum_{k in J} c_k a_k``.

    Determined by ``<a^v_i, omega^J_j> = delta_ij`` for ``i in J``, i.e.
    ``A(J) c = e_j``.
    """
    J = _proper(datum, J)
    inv = _levi_inverse(datum, J)
    col = J.index(j)
    return {k: inv[r][col] for r, k in enumerate(J)}


def levi_weight(datum: RootDatum, J: Iterable[int], j: int) -> Functional:
    out = datum.zero_functional()
    for k, ck in levi_weight_coeffs(datum, J, j).items():
        out = out + ck * datum.simple_root(k)
    return out


@lru_cache(maxsize=None)
def levi_coweights(datum: RootDatum, J: tuple[int, ...]) -> dict[int, CartanVector]:
    """``omega^v^J_j = sum_{k in J} x_k a^v_k`` with ``<omega^v^J_j, a_i> = delta_ij``."""
    J = _proper(datum, J)
    inv = _levi_inverse(datum, J)
    out = {}
    for col, j in enumerate(J):
        # <sum x_k a^v_k, a_i> = sum_k a_{ki} x_k, so A(J)^T x = e_j
        x = [inv[col][r] for r in range(len(J))]
        out[j] = datum.coroot_combination([x[J.index(i)] if i in J else 0 for i in datum.indices])
    return out


@dataclass(frozen=True)
class RhoData:
    J: tuple[int, ...]
    rho_of_P: Functional
    rho_P: Functional
    kappa: dict[int, Fraction]
    dD: Fraction

    def to_json(self) -> dict:
        return {
            "J": list(self.J),
            "rho_of_P": self.rho_of_P.to_json(),
            "rho_P": self.rho_P.to_json(),
            "kappa": {str(k): fmt(v) for k, v in self.kappa.items()},
            "dD": fmt(self.dD),
        }


def rho_of(datum: RootDatum, J: Iterable[int]) -> Functional:
    """``rho(P_J)``; by convention ``rho(G) = rho`` for ``J = I``."""
    J = datum.check_subset(J)
    if len(J) == datum.size:
        return datum.rho
    out = datum.zero_functional()
    for j in sorted(J):
        out = out + levi_weight(datum, J, j)
    return out


@lru_cache(maxsize=None)
def _rho_data(datum: RootDatum, J: tuple[int, ...]) -> RhoData:
    rP = rho_of(datum, J)
    rho_P = datum.rho - rP
    kappa = {i: 1 - pair(datum.coroot(i), rP) for i in datum.indices if i not in J}
    dD = pair(datum.D, rP)
    # rho_P = sum kappa_i lambda_i - dD delta, checked on every basis vector
    recon = Functional(datum, [kappa.get(i, 0) for i in datum.indices] + [0]) - dD * datum.delta
    assert recon == rho_P, "rho_P decomposition failed"
    assert all(k >= 0 for k in kappa.values()) and dD >= 0
    return RhoData(J, rP, rho_P, kappa, dD)


def rho_data(datum: RootDatum, J: Iterable[int]) -> RhoData:
    return _rho_data(datum, _proper(datum, J))


def rho_PQ(datum: RootDatum, J: Iterable[int], K: Iterable[int]) -> Functional:
    """``rho_P^Q``: the functional ``rho(Q)``, meant on ``h(Q)_{*P}``.

    ``K = I`` is allowed and gives ``rho``.
    """
    J = datum.check_subset(J)
    K = datum.check_subset(K)
    if not J <= K or len(J) == datum.size:
        raise NestingError("need J a proper subset of K")
    return rho_of(datum, K)


def null_subspace_basis(datum: RootDatum, J: Iterable[int]) -> list[CartanVector]:
    """A basis of ``{Z : <Z, a_j> = 0 for j in J}`` inside the extended algebra."""
    J = sorted(datum.check_subset(J))
    n = datum.size + 1
    basis = [datum.coroot(i) for i in datum.indices] + [datum.D]
    rows = [[pair(b, datum.simple_root(j)) for b in basis] for j in J]
    if not rows:
        return basis
    out = []
    for vec in linalg.nullspace(rows):
        out.append(CartanVector(datum, vec))
    assert len(out) == n - len(J)
    return out


def rho_PQ_residuals(datum: RootDatum, J: Iterable[int], K: Iterable[int]) -> dict[str, list]:
    """Evaluate ``rho_P - rho_Q - rho_P^Q`` on spanning sets.

    Returns the residual values on a basis of the ``J``-null subspace (where
    ``(h^+)_P`` lives) and on a basis of the ``K``-null subspace.  Both lists
    are all zero when the decomposition holds.
    """
    J = datum.check_subset(J)
    K = datum.check_subset(K)
    rho_P = datum.rho - rho_of(datum, J)
    rho_Q = datum.rho - rho_of(datum, K)
    resid = rho_P - rho_Q - rho_PQ(datum, J, K)
    return {
        "P_null": [pair(Z, resid) for Z in null_subspace_basis(datum, J)],
        "Q_null": [pair(Z, resid) for Z in null_subspace_basis(datum, K)],
    }


def raghunathan(datum: RootDatum, d: int, J: Iterable[int]) -> tuple[dict[int, Fraction], Functional]:
    """``lambda_d = sum_{j in J} c_j a_j + mu`` with the sign contracts asserted."""
    J = _proper(datum, J)
    lam = datum.fundamental_weight(d)
    if d not in J:
        coeffs = {j: Fraction(0) for j in J}
        mu = lam
    else:
        coeffs = {j: Fraction(0) for j in J}
        coeffs.update(levi_weight_coeffs(datum, J, d))
        mu = lam - levi_weight(datum, J, d)
    assert all(c >= 0 for c in coeffs.values())
    assert all(pair(datum.coroot(i), mu) >= 0 for i in datum.indices)
    assert all(pair(datum.coroot(j), mu) == 0 for j in J)
    recon = mu
    for j, c in coeffs.items():
        recon = recon + c * datum.simple_root(j)
    assert recon == lam
    return coeffs, mu


def root_in_PJ(datum: RootDatum, root: RealRoot, J: Iterable[int]) -> str:
    """Classify a root against ``P_J = R_+ u [Delta(J)]_-``.

    semisimple: supported on ``J`` (either sign); nilpotent: in ``P_J`` but
    not semisimple; outside: negative and not supported on ``J``.
    """
    J = _proper(datum, J)
    root.validate(datum)
    b = root.coefficients(datum)
    support = {i for i, x in zip(datum.indices, b) if x}
    if support <= set(J):
        return SEMISIMPLE
    return NILPOTENT if root.is_positive() else OUTSIDE
