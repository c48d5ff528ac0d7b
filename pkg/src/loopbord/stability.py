"""Canonical pairs at the level of horospherical coordinates.

A point is described by a parabolic type ``J``, a point of the Levi (a
half-plane point when ``|J| = 1``, nothing when ``J`` is empty), a torus
coordinate ``a`` with ``a^{a_j} = 1`` for ``j in J``, and an optional
unipotent coordinate that no predicate looks at.

Levi semistability is only decidable where an oracle is registered: the
trivial Levi (``J`` empty) and rank-one Levis (``SL2``, via ``halfplane``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .corners import TorusPoint, TorusStratumPoint, torus_corner_strata
from .errors import (
    EmptyCandidates,
    NestingError,
    UndecidableCell,
    UndecidableLevi,
    WrongParabolic,
)
from .halfplane import Cusp, HPoint, canonical_pair, deg_inst, im_at_cusp
from .loopu import IMCoords
from .lognum import LogNumber, PositiveReal
from .parabolic import rho_PQ
from .rationals import fmt
from .rootdata import CartanVector, RootDatum, pair

AFFINE_SL2 = RootDatum.named("sl2")


def _levi_trivial(levi) -> bool:
    return True


def _levi_halfplane(levi: HPoint) -> bool:
    return deg_inst(levi).semistable


# keyed by |J|; frozen at import
LEVI_ORACLES: Mapping[int, Callable] = {0: _levi_trivial, 1: _levi_halfplane}


def levi_semistable(J: Iterable[int], levi) -> bool:
    J = tuple(J)
    oracle = LEVI_ORACLES.get(len(J))
    if oracle is None:
        raise UndecidableLevi(f"no semistability oracle for Levi of type {list(J)}")
    return oracle(levi)


@dataclass(frozen=True)
class HorosphericalPoint:
    J: tuple[int, ...]
    levi: HPoint | None
    a: TorusPoint
    u: IMCoords | None = None

    def __post_init__(self):
        J = tuple(sorted(self.a.datum.check_subset(self.J)))
        object.__setattr__(self, "J", J)
        _check_levi_torus(self.a, J)
        if len(J) == 1 and self.levi is None:
            raise ValueError("a rank-one Levi needs a half-plane point")

    @property
    def datum(self) -> RootDatum:
        return self.a.datum

    def to_json(self) -> dict:
        return {
            "J": list(self.J),
            "levi": None if self.levi is None else str(self.levi),
            "a": self.a.to_json(),
        }


@dataclass(frozen=True)
class BoundaryPoint:
    """A point over the corner stratum ``K`` of ``c(A^+_P)``."""

    J: tuple[int, ...]
    levi: HPoint | None
    a: TorusStratumPoint

    @property
    def datum(self) -> RootDatum:
        return self.a.datum


def _check_levi_torus(a: TorusPoint, J) -> None:
    bad = [j for j in J if a.logs[j - 1] != 0]
    if bad:
        raise WrongParabolic(f"a^(a_j) must equal 1 for j in J; fails for {bad}")


def ap_cell_contains(a: TorusPoint, J: Iterable[int], t=1) -> bool:
    """``a^alpha < t`` for simple roots off ``J``, and ``a^rho < 1``."""
    datum = a.datum
    J = datum.check_subset(J)
    if len(J) == datum.size:
        raise NestingError("J must be a proper subset")
    _check_levi_torus(a, J)
    log_t = PositiveReal.of(t).log
    if not all(a.logs[i - 1] < log_t for i in datum.indices if i not in J):
        return False
    return a.log_power(datum.rho) < 0


def check_canonical(J: Iterable[int], p: HorosphericalPoint) -> bool:
    """Whether ``(P_J, e)`` is the canonical pair of ``p``."""
    J = tuple(sorted(p.datum.check_subset(J)))
    if J != p.J:
        raise WrongParabolic(f"point is given in coordinates for {list(p.J)}, not {list(J)}")
    if not levi_semistable(J, p.levi):
        return False
    return ap_cell_contains(p.a, J, 1)


@dataclass(frozen=True)
class SL2Criterion:
    """The two conditions of the criterion for ``(B, gamma_m)`` in finite ``SL2``."""

    delta_condition: bool  # <alpha, H_B(gamma_m z)> < 0
    rho_condition: bool  # <rho, H_B(gamma_m z)> < 0

    @property
    def holds(self) -> bool:
        return self.delta_condition and self.rho_condition


def check_canonical_sl2(z: HPoint, cusp: Cusp) -> SL2Criterion:
    """Finite ``SL2``: ``H_B(gamma_m z) = -1/2 log Im(gamma_m z) H``, with ``alpha(H) = 2``."""
    coeff = LogNumber.log(im_at_cusp(z, cusp)) * Fraction(-1, 2)
    return SL2Criterion(coeff * 2 < 0, coeff < 0)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Candidate:
    J: tuple[int, ...]
    K: tuple[int, ...]
    H: CartanVector


def _order_key(c: Candidate):
    return (-len(c.J), c.J, c.K)


def deg_q_inst_over(candidates: Iterable) -> tuple[object, Candidate]:
    """Minimum of ``<rho_P^Q, H>`` over explicit candidates, with its argmin.

    Ties prefer the larger parabolic, then the lexicographically smaller ``J``.
    """
    cands = [c if isinstance(c, Candidate) else Candidate(tuple(sorted(c[0])), tuple(sorted(c[1])), c[2])
             for c in candidates]
    if not cands:
        raise EmptyCandidates("candidate list is empty")
    best_val, best = None, None
    for c in sorted(cands, key=_order_key):
        v = pair(c.H, rho_PQ(c.H.datum, c.J, c.K))
        if best is None or v < best_val:
            best_val, best = v, c
    return best_val, best


def central_shift(deg, m_c, datum: RootDatum = AFFINE_SL2):
    """``deg + h^v m_c``: the effect of ``H -> H + m_c c`` on ``<rho, H>``."""
    assert pair(datum.c, datum.rho) == datum.h_check
    return deg + datum.h_check * Fraction(m_c)


@dataclass(frozen=True)
class FamilyMember:
    n: int
    r: Fraction
    H: CartanVector
    a: TorusPoint
    in_cell: bool
    limit: TorusPoint
    limit_tag: str
    limit_degree: Fraction

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": fmt(self.r),
            "H": self.H.to_json(),
            "in_cell": self.in_cell,
            "limit": {"tag": self.limit_tag, "H": (-self.r * self.a.datum.D).to_json()},
            "limit_degree": fmt(self.limit_degree),
        }


def semistable_family(n: int, r, datum: RootDatum = AFFINE_SL2) -> FamilyMember:
    """``H_n = -(1/n) c - r D``; the limit ``-r D`` is semistable of degree ``0``."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    r = Fraction(r)
    if r <= 0:
        raise ValueError("r must be positive")
    I_o = tuple(datum.finite_indices)
    H = -Fraction(1, n) * datum.c - r * datum.D
    a = TorusPoint.exp(H)
    in_cell = ap_cell_contains(a, I_o, 1)
    limit = TorusPoint.exp(-r * datum.D)
    degree = pair(-r * datum.D, datum.rho)
    return FamilyMember(n, r, H, a, in_cell, limit, "semistable", degree)


def rho_threshold(C, log_bound, datum: RootDatum = AFFINE_SL2) -> Fraction:
    """``M = (h^v C + sum(n_i) B) / min(n_i) + 1`` with ``rho_o = sum n_i a_i``.

    ``B`` is a rational upper bound for ``|log t|``.
    """
    C, B = Fraction(C), Fraction(log_bound)
    if C < 0 or B < 0:
        raise ValueError("C and the log bound must be nonnegative")
    roots = datum.finite_roots
    n = [Fraction(sum(r[i] for r in roots), 2) for i in range(datum.ell)]
    return (datum.h_check * C + sum(n) * B) / min(n) + 1


# ---------------------------------------------------------------------------
# partition cells


@dataclass(frozen=True)
class PartitionCell:
    tag: str  # "semistable" | "cell" | "boundary"
    P: tuple[int, ...] | None = None
    Q: tuple[int, ...] | None = None
    cusp: Cusp | None = None

    def to_json(self) -> dict:
        out = {"tag": self.tag}
        if self.P is not None:
            out["P"] = list(self.P)
        if self.Q is not None:
            out["Q"] = list(self.Q)
        if self.cusp is not None:
            out["levi_cusp"] = str(self.cusp)
        return out


SEMISTABLE = PartitionCell("semistable")


def _borel_refinement(p: HorosphericalPoint) -> PartitionCell | None:
    """For an unstable rank-one Levi, test the Borel pair through its canonical cusp."""
    (j,) = p.J
    info = canonical_pair(p.levi)
    Y = p.a.log_vector() - (LogNumber.log(info.max_im) * Fraction(1, 2)) * p.datum.coroot(j)
    datum = p.datum
    if all(pair(Y, datum.simple_root(i)) < 0 for i in datum.indices) and pair(Y, datum.rho) < 0:
        return PartitionCell("cell", (), None, info.cusp)
    return None


def pbord_cell(p, J: Iterable[int] | None = None) -> PartitionCell:
    """Assign ``p`` to its cell of the partition where that is decidable locally.

    Raises ``UndecidableCell`` when the answer needs a global search over
    rational parabolics.
    """
    datum = p.datum
    J = p.J if J is None else tuple(sorted(datum.check_subset(J)))
    if J != p.J:
        raise WrongParabolic(f"point is given in coordinates for {list(p.J)}, not {list(J)}")
    if isinstance(p, BoundaryPoint):
        strata = torus_corner_strata(datum, J, 1)
        if levi_semistable(J, p.levi) and strata.contains(p.a):
            return PartitionCell("boundary", J, p.a.J)
        raise UndecidableCell("boundary point outside the local corner of its parabolic")
    if check_canonical(J, p):
        return PartitionCell("cell", J)
    semistable_levi = levi_semistable(J, p.levi)
    if semistable_levi and J == tuple(datum.finite_indices):
        # log a = m c - r D; a^rho = e^{h m}, so the criterion failed with m >= 0
        return SEMISTABLE
    if not semistable_levi and len(J) == 1:
        cell = _borel_refinement(p)
        if cell is not None:
            return cell
    raise UndecidableCell("canonical pair is not determined by local data")
