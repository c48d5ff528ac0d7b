"""Truncated model of the pro-unipotent group of affine SL2.

Elements are 2x2 matrices over ``Q[[t]]`` modulo ``t^N``, in the shape
``m21 = 0 mod t`` and ``m11 = m22 = 1 mod t``.  Every such matrix factors
uniquely as ``chi_a(sigma) h_a(mu) chi_-a(tau)`` with ``mu = 1 mod t`` and
``tau = 0 mod t``; multiplying out gives

    [[mu + sigma mu^-1 tau, sigma mu^-1],
     [mu^-1 tau,            mu^-1      ]].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .corners import TorusPoint
from .errors import NonTermination, NotUnipotentShape, OrderMismatch, SchemaError
from .lognum import LogNumber, PositiveReal
from .rationals import fmt_all, nearest_integer, parse_rational

DEFAULT_ORDER = 8
OMEGA0 = (Fraction(-1, 2), Fraction(1, 2))


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if not self.coeffs:
            raise ValueError("truncation order must be at least 1")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, values: Sequence, N: int) -> "TruncatedSeries":
        vals = [parse_rational(v) for v in values]
        if len(vals) > N:
            if any(vals[N:]):
                raise SchemaError(f"series has nonzero terms at depth >= {N}")
            vals = vals[:N]
        return cls(tuple(vals) + (Fraction(0),) * (N - len(vals)))

    @classmethod
    def constant(cls, c, N: int) -> "TruncatedSeries":
        return cls.of([c], N)

    @classmethod
    def monomial(cls, c, k: int, N: int) -> "TruncatedSeries":
        out = [Fraction(0)] * N
        if k < N:
            out[k] = Fraction(c)
        return cls(tuple(out))

    @property
    def N(self) -> int:
        return len(self.coeffs)

    def _check(self, other: "TruncatedSeries"):
        if other.N != self.N:
            raise OrderMismatch(f"orders {self.N} and {other.N} differ")

    def __add__(self, other):
        self._check(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TruncatedSeries(tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncatedSeries):
            return TruncatedSeries(tuple(Fraction(other) * a for a in self.coeffs))
        self._check(other)
        N = self.N
        out = [Fraction(0)] * N
        for i, a in enumerate(self.coeffs):
            if a:
                for j in range(N - i):
                    out[i + j] += a * other.coeffs[j]
        return TruncatedSeries(tuple(out))

    __rmul__ = __mul__

    def inverse(self) -> "TruncatedSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        N = self.N
        inv = [Fraction(0)] * N
        inv[0] = 1 / c0
        for k in range(1, N):
            inv[k] = -sum(self.coeffs[j] * inv[k - j] for j in range(1, k + 1)) / c0
        return TruncatedSeries(tuple(inv))

    def __truediv__(self, other):
        if not isinstance(other, TruncatedSeries):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def substitute(self, s) -> "TruncatedSeries":
        """``t -> s t``."""
        s = Fraction(s)
        return TruncatedSeries(tuple(c * s**k for k, c in enumerate(self.coeffs)))

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def to_json(self) -> dict:
        return {"N": self.N, "coeffs": fmt_all(self.coeffs)}


def parse_series(text: str, N: int) -> TruncatedSeries:
    """Comma-separated coefficients ``c_0,c_1,...``."""
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if not parts:
        raise SchemaError("empty series")
    return TruncatedSeries.of(parts, N)


LoopMatrix = tuple  # ((m11, m12), (m21, m22)) of TruncatedSeries


def mat_mul(A: LoopMatrix, B: LoopMatrix) -> LoopMatrix:
    return tuple(tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)) for i in range(2))


def determinant(M: LoopMatrix) -> TruncatedSeries:
    return M[0][0] * M[1][1] - M[0][1] * M[1][0]


def matrix_of(rows, N: int) -> LoopMatrix:
    """Build a loop matrix from nested coefficient lists."""
    return tuple(tuple(TruncatedSeries.of(e if isinstance(e, (list, tuple)) else [e], N) for e in row) for row in rows)


def chi(x: TruncatedSeries) -> LoopMatrix:
    N = x.N
    return ((TruncatedSeries.constant(1, N), x), (TruncatedSeries.constant(0, N), TruncatedSeries.constant(1, N)))


def chi_neg(x: TruncatedSeries) -> LoopMatrix:
    N = x.N
    return ((TruncatedSeries.constant(1, N), TruncatedSeries.constant(0, N)), (x, TruncatedSeries.constant(1, N)))


def h(v: TruncatedSeries) -> LoopMatrix:
    z = TruncatedSeries.constant(0, v.N)
    return ((v, z), (z, v.inverse()))


@dataclass(frozen=True)
class IMCoords:
    sigma: TruncatedSeries
    mu: TruncatedSeries
    tau: TruncatedSeries

    def __post_init__(self):
        self.sigma._check(self.mu)
        self.sigma._check(self.tau)
        if self.mu.coeffs[0] != 1:
            raise NotUnipotentShape("mu must be 1 mod t")
        if self.tau.coeffs[0] != 0:
            raise NotUnipotentShape("tau must be 0 mod t")

    @classmethod
    def identity(cls, N: int = DEFAULT_ORDER) -> "IMCoords":
        return cls(
            TruncatedSeries.constant(0, N), TruncatedSeries.constant(1, N), TruncatedSeries.constant(0, N)
        )

    @classmethod
    def of(cls, sigma, mu, tau, N: int = DEFAULT_ORDER) -> "IMCoords":
        return cls(TruncatedSeries.of(sigma, N), TruncatedSeries.of(mu, N), TruncatedSeries.of(tau, N))

    @property
    def N(self) -> int:
        return self.sigma.N

    def coefficients(self) -> list[Fraction]:
        """All free coefficients: ``sigma``, ``mu - 1`` and ``tau``."""
        return list(self.sigma.coeffs) + list(self.mu.coeffs[1:]) + list(self.tau.coeffs[1:])

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coefficients())

    def to_json(self) -> dict:
        return {"sigma": self.sigma.to_json(), "mu": self.mu.to_json(), "tau": self.tau.to_json()}


def to_matrix(u: IMCoords) -> LoopMatrix:
    mi = u.mu.inverse()
    return ((u.mu + u.sigma * mi * u.tau, u.sigma * mi), (mi * u.tau, mi))


def im_coords(M: LoopMatrix) -> IMCoords:
    (m11, m12), (m21, m22) = M
    if m22.coeffs[0] != 1 or m11.coeffs[0] != 1 or m21.coeffs[0] != 0:
        raise NotUnipotentShape("expected diagonal = 1 mod t and lower-left = 0 mod t")
    N = m11.N
    if determinant(M) != TruncatedSeries.constant(1, N):
        raise NotUnipotentShape("determinant is not 1 mod t^N")
    return IMCoords(m12 / m22, m22.inverse(), m21 / m22)


def u_multiply(u1: IMCoords, u2: IMCoords) -> IMCoords:
    if u1.N != u2.N:
        raise OrderMismatch(f"orders {u1.N} and {u2.N} differ")
    return im_coords(mat_mul(to_matrix(u1), to_matrix(u2)))


def u_inverse(u: IMCoords) -> IMCoords:
    (a, b), (c, d) = to_matrix(u)
    return im_coords(((d, -b), (-c, a)))


LOOP_ROTATION = "loop-rotation"
TORUS = "torus"


def scale(u: IMCoords, s, kind: str = LOOP_ROTATION) -> IMCoords:
    """Conjugation by loop rotation ``t -> s t`` or by the torus element ``h_a(s)``."""
    s = Fraction(s)
    if s == 0:
        raise ValueError("scale factor must be nonzero")
    if kind == LOOP_ROTATION:
        return IMCoords(u.sigma.substitute(s), u.mu.substitute(s), u.tau.substitute(s))
    if kind == TORUS:
        return IMCoords(u.sigma * (s * s), u.mu, u.tau * (1 / (s * s)))
    raise SchemaError(f"unknown scaling kind {kind!r}")


def _in_box(c: Fraction, box=OMEGA0) -> bool:
    return box[0] <= c <= box[1]


def in_omega0(u: IMCoords) -> bool:
    return all(_in_box(c) for c in u.coefficients())


@dataclass(frozen=True)
class Reduction:
    reduced: IMCoords
    gamma: IMCoords
    steps: tuple  # (kind, depth, n)

    def to_json(self) -> dict:
        return {
            "N": self.reduced.N,
            "reduced": self.reduced.to_json(),
            "gamma": self.gamma.to_json(),
            "steps": [{"kind": k, "depth": d, "n": n} for k, d, n in self.steps],
        }


def u_reduce(u: IMCoords) -> Reduction:
    """Right-multiply by integral elements until every coefficient is in ``[-1/2, 1/2]``.

    Depth ``k`` is fixed in the order sigma, mu, tau; each correction only
    disturbs strictly deeper coefficients of the other coordinates, so one
    pass over the depths suffices.
    """
    N = u.N
    cur, M = u, to_matrix(u)
    G = to_matrix(IMCoords.identity(N))
    steps = []
    budget = 3 * N
    for k in range(N):
        for kind in ("sigma", "mu", "tau"):
            if k == 0 and kind != "sigma":
                continue
            c = getattr(cur, kind).coeffs[k]
            n = nearest_integer(c)
            if not n:
                continue
            budget -= 1
            if budget < 0:
                raise NonTermination("reduction exceeded its step budget")  # pragma: no cover
            if kind == "sigma":
                g = chi(TruncatedSeries.monomial(-n, k, N))
            elif kind == "mu":
                g = h(TruncatedSeries.constant(1, N) + TruncatedSeries.monomial(-n, k, N))
            else:
                g = chi_neg(TruncatedSeries.monomial(-n, k, N))
            M, G = mat_mul(M, g), mat_mul(G, g)
            cur = im_coords(M)
            steps.append((kind, k, -n))
    gamma = im_coords(G)
    assert in_omega0(cur) and gamma.is_integral()
    assert mat_mul(to_matrix(u), G) == M
    return Reduction(cur, gamma, tuple(steps))


def siegel_membership(a: TorusPoint, u: IMCoords, t=1, omega=OMEGA0) -> bool:
    """``a^{a_i} < t`` for every node and every coordinate of ``u`` in ``omega``."""
    log_t = PositiveReal.of(t).log
    if not all(LogNumber.coerce(x) < log_t for x in a.logs):
        return False
    return all(_in_box(c, omega) for c in u.coefficients())
