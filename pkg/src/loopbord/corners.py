"""Cartan decompositions, the corner of the Tits cone and its torus version.

Points of the Tits cone are ``H = X - r D`` with ``r > 0``.  In coweight
coordinates ``H = sum p_i lam^v_i + m c`` one has ``p_i = <H, a_i>`` and
``<H, delta> = sum d_i p_i``, so membership in the cone is a sign test.

The corner adds, for each proper ``J``, a stratum ``h(0, J)`` spanned by
``{a^v_j : j in J}``, recorded in the coordinates of the Levi coweights
``omega^v^J_j``.  Sequences are described declaratively by the limits of
their coweight coordinates and classified by :func:`limit_of`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import FullSetError, MalformedSpec, NestingError
from .lognum import LogNumber, PositiveReal
from .parabolic import levi_coweights
from .rationals import fmt
from .rootdata import CartanVector, RootDatum, pair

# ---------------------------------------------------------------------------
# Garland and relative decompositions


@dataclass(frozen=True)
class Split:
    """``H = part + rest`` with ``part = sum coords_j omega^v^J_j``."""

    J: tuple[int, ...]
    r: Fraction
    coords: dict[int, Fraction]
    part: CartanVector
    rest: CartanVector

    def to_json(self) -> dict:
        return {
            "J": list(self.J),
            "r": fmt(self.r),
            "coords": {str(j): fmt(c) for j, c in self.coords.items()},
            "part": self.part.to_json(),
            "rest": self.rest.to_json(),
        }


def _shifted(H: CartanVector, r) -> CartanVector:
    """``H`` as a point ``X - rD``: add ``-rD`` when ``H`` has no D-part."""
    if H.d_coeff == 0:
        return H - r * H.datum.D
    if H.d_coeff != -r:
        raise ValueError(f"D-coordinate {H.d_coeff} of H does not equal -r = {-r}")
    return H


def garland_split(H: CartanVector, r, J: Iterable[int]) -> Split:
    """Decompose ``H = H(J) + H_J`` with ``<a_i, H_J - rD> = 0`` for ``i in J``.

    ``H`` may be given without D-part (the element ``X`` of the loop Cartan)
    or with D-coordinate ``-r``; ``H_J`` keeps the D-coordinate of the input.
    """
    datum = H.datum
    r = Fraction(r)
    J = tuple(sorted(datum.check_subset(J)))
    if len(J) == datum.size:
        raise FullSetError("the decomposition fails for J = I")
    Hr = _shifted(H, r)
    coweights = levi_coweights(datum, J)
    coords = {j: pair(Hr, datum.simple_root(j)) for j in J}
    part = datum.zero_vector()
    for j, cj in coords.items():
        part = part + cj * coweights[j]
    rest = H - part
    return Split(J, r, coords, part, rest)


def relative_split(H_J: CartanVector, J: Iterable[int], K: Iterable[int], r=None) -> Split:
    """Split ``H_J`` (with ``<a_j, H_J - rD> = 0`` on ``J``) along ``K``.

    The first part lies in ``h(J, K)``: it is a combination of the
    ``omega^v^K_k`` with ``k in K \\ J`` and is killed by ``a_j`` for ``j in J``.
    """
    datum = H_J.datum
    J = datum.check_subset(J)
    K = datum.check_subset(K)
    if not J <= K:
        raise NestingError("need J contained in K")
    if r is None:
        if H_J.d_coeff == 0:
            raise ValueError("r is required when H_J has no D-part")
        r = -H_J.d_coeff
    r = Fraction(r)
    Hr = _shifted(H_J, r)
    for j in J:
        if pair(Hr, datum.simple_root(j)) != 0:
            raise ValueError(f"input is not in h^r_J: <a_{j}, H - rD> != 0")
    out = garland_split(H_J, r, K)
    assert all(out.coords[j] == 0 for j in J)
    return out


def project_within(Z: CartanVector, J: Iterable[int]) -> CartanVector:
    """``pr^K(J)``: the ``h(0, J)``-component of ``Z`` in ``h(0, J) + h(J, K)``."""
    datum = Z.datum
    J = tuple(sorted(datum.check_subset(J)))
    coweights = levi_coweights(datum, J)
    out = datum.zero_vector()
    for j in J:
        out = out + pair(Z, datum.simple_root(j)) * coweights[j]
    return out


def projection_paths(H: CartanVector, r, J: Iterable[int], K: Iterable[int]):
    """``(pr^r(J)(H), pr^K(J)(pr^r(K)(H)))``; the two agree."""
    datum = H.datum
    J = datum.check_subset(J)
    K = datum.check_subset(K)
    if not J <= K:
        raise NestingError("need J contained in K")
    direct = garland_split(H, r, J).part
    via = project_within(garland_split(H, r, K).part, J)
    return direct, via


# ---------------------------------------------------------------------------
# corner points


@dataclass(frozen=True)
class Interior:
    H: CartanVector

    def __post_init__(self):
        if not self.H.datum.tits_cone_contains(self.H):
            raise ValueError("interior points must lie in the Tits cone")

    @property
    def r(self) -> Fraction:
        return -pair(self.H, self.H.datum.delta)

    def to_json(self) -> dict:
        p, m = self.H.coweight_coords()
        return {"stratum": "interior", "coords": [fmt(x) for x in p], "central": fmt(m)}


@dataclass(frozen=True)
class Stratum:
    """A point ``sum_{j in J} coords_j omega^v^J_j`` of ``h(0, J)``."""

    datum: RootDatum
    J: tuple[int, ...]
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        J = tuple(sorted(self.datum.check_subset(self.J)))
        if len(J) == self.datum.size:
            raise FullSetError("strata are indexed by proper subsets")
        if len(self.coords) != len(J):
            raise MalformedSpec("one coordinate per element of J is required")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))

    def vector(self) -> CartanVector:
        cw = levi_coweights(self.datum, self.J)
        out = self.datum.zero_vector()
        for j, c in zip(self.J, self.coords):
            out = out + c * cw[j]
        return out

    def to_json(self) -> dict:
        return {"stratum": list(self.J), "coords": [fmt(c) for c in self.coords]}


class _Divergent:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "Divergent"

    def to_json(self) -> dict:
        return {"stratum": "divergent"}


Divergent = _Divergent()


def origin(datum: RootDatum) -> Stratum:
    """The point ``o_0`` of the empty stratum."""
    return Stratum(datum, (), ())


# ---------------------------------------------------------------------------
# sequences and their limits


class _MinusInf:
    _inst = None

    def __new__(cls):
        if cls._inst is None:
            cls._inst = super().__new__(cls)
        return cls._inst

    def __repr__(self):
        return "-inf"


MINUS_INF = _MinusInf()
UNCONSTRAINED = "unconstrained"


@dataclass(frozen=True)
class SequenceSpec:
    """Limits of the coweight coordinates of a sequence.

    ``source`` is ``None`` for a sequence of interior points, or the label
    ``K`` of the stratum the sequence lives in.  ``limits`` maps a node to a
    rational limit or :data:`MINUS_INF`.  ``central`` is the limit of the
    central coordinate of an interior sequence, or :data:`UNCONSTRAINED`.
    """

    datum: RootDatum
    limits: Mapping[int, object]
    source: tuple[int, ...] | None = None
    central: object = UNCONSTRAINED

    def __post_init__(self):
        lim = {}
        for i, v in dict(self.limits).items():
            lim[int(i)] = v if v is MINUS_INF else Fraction(v)
        object.__setattr__(self, "limits", lim)
        if self.source is not None:
            object.__setattr__(self, "source", tuple(sorted(self.datum.check_subset(self.source))))
        if self.central is not UNCONSTRAINED and self.central is not MINUS_INF:
            object.__setattr__(self, "central", Fraction(self.central))

    def declared(self) -> tuple[int, ...]:
        return tuple(sorted(self.limits))


def limit_of(spec: SequenceSpec):
    """Classify the limit of a declared sequence in the corner.

    The limit stratum is the set ``J`` of convergent coordinates, with limit
    point ``sum_{j in J} c_j omega^v^J_j``.  For an interior sequence with
    every coordinate convergent the limit is interior, provided the central
    coordinate converges and the limit stays in the Tits cone; otherwise the
    sequence has no limit in the corner.
    """
    datum = spec.datum
    expected = spec.source if spec.source is not None else tuple(datum.indices)
    if spec.declared() != expected:
        raise MalformedSpec(f"coordinates {list(expected)} must be declared, got {list(spec.declared())}")
    if spec.source is not None:
        if len(spec.source) == datum.size:
            raise MalformedSpec("a source stratum must be a proper subset")
        if spec.central is not UNCONSTRAINED:
            raise MalformedSpec("stratum sequences carry no central coordinate")
    J = tuple(i for i in expected if spec.limits[i] is not MINUS_INF)
    coords = tuple(spec.limits[j] for j in J)
    if len(J) < datum.size:
        return Stratum(datum, J, coords)
    if spec.central is UNCONSTRAINED:
        raise MalformedSpec("an interior limit needs a declared central coordinate")
    if spec.central is MINUS_INF:
        return Divergent
    H = CartanVector.from_coweight(datum, coords, spec.central)
    if not datum.tits_cone_contains(H):
        return Divergent
    return Interior(H)


@dataclass(frozen=True)
class AffineSequence:
    """Coordinates ``x_n = alpha + beta/n - gamma n`` with ``gamma >= 0``.

    ``coeffs`` maps a node to ``(alpha, beta, gamma)``; ``central`` is
    ``(alpha, beta)`` or ``None``.  Used to produce concrete trajectories
    together with their :class:`SequenceSpec`.
    """

    datum: RootDatum
    coeffs: Mapping[int, tuple]
    source: tuple[int, ...] | None = None
    central: tuple | None = None

    def spec(self) -> SequenceSpec:
        lim = {i: (MINUS_INF if Fraction(g) > 0 else Fraction(a)) for i, (a, b, g) in self.coeffs.items()}
        central = UNCONSTRAINED if self.central is None else Fraction(self.central[0])
        return SequenceSpec(self.datum, lim, self.source, central)

    def coordinate(self, i: int, n: int) -> Fraction:
        a, b, g = (Fraction(x) for x in self.coeffs[i])
        return a + b / n - g * n

    def at(self, n: int):
        if self.source is not None:
            J = tuple(sorted(self.coeffs))
            return Stratum(self.datum, J, tuple(self.coordinate(j, n) for j in J))
        p = [self.coordinate(i, n) for i in self.datum.indices]
        m = 0 if self.central is None else Fraction(self.central[0]) + Fraction(self.central[1]) / n
        return Interior(CartanVector.from_coweight(self.datum, p, m))


# ---------------------------------------------------------------------------
# windows and the push into the interior


def window_contains(p, M0, r0, t) -> bool:
    """Membership in the compact window ``(M0, r0, t)`` of the corner."""
    M0, r0, t = Fraction(M0), Fraction(r0), Fraction(t)
    if isinstance(p, Stratum):
        return all(c <= t for c in p.coords)
    H = p.H
    datum = H.datum
    p_coords, m = H.coweight_coords()
    return all(x <= t for x in p_coords) and abs(m) <= M0 and -pair(H, datum.delta) >= r0


def push_interior(p) -> tuple[float, ...]:
    """Coweight coordinates (floats) of the push ``F_{-rho^v}`` of a corner point."""
    if isinstance(p, Stratum):
        vals = dict(zip(p.J, p.coords))
        return tuple(
            math.exp(-abs(float(vals[i]))) - 1.0 if i in vals else -1.0 for i in p.datum.indices
        )
    p_coords, _ = p.H.coweight_coords()
    return tuple(math.exp(-abs(float(x))) - 1.0 for x in p_coords)


# ---------------------------------------------------------------------------
# the torus corner


def _log(x) -> LogNumber:
    return PositiveReal.of(x).log


@dataclass(frozen=True)
class TorusPoint:
    """A point ``exp(H)`` of the positive torus.

    Stored by the exact logarithms ``p_i = <H, a_i>`` and central value
    ``f``; the multiplicative coordinates are ``s_i = e^{p_i}`` and
    ``z = e^f``.  The cone condition ``prod s_i^{d_i} < 1`` is checked.
    """

    datum: RootDatum
    logs: tuple[LogNumber, ...]
    central: LogNumber

    def __post_init__(self):
        logs = tuple(LogNumber.coerce(x) for x in self.logs)
        if len(logs) != self.datum.size:
            raise MalformedSpec("one coordinate per node is required")
        object.__setattr__(self, "logs", logs)
        object.__setattr__(self, "central", LogNumber.coerce(self.central))
        total = sum((d * x for d, x in zip(self.datum.d, logs)), LogNumber())
        if not total < 0:
            raise ValueError("torus point violates prod s_i^{d_i} < 1")

    @classmethod
    def from_multiplicative(cls, datum: RootDatum, s: Sequence, z) -> "TorusPoint":
        return cls(datum, tuple(_log(x) for x in s), _log(z))

    @classmethod
    def exp(cls, H: CartanVector) -> "TorusPoint":
        p, m = H.coweight_coords()
        return cls(H.datum, tuple(LogNumber.coerce(x) for x in p), LogNumber.coerce(m))

    def log_vector(self) -> CartanVector:
        """``log a`` as a Cartan vector with exact log coefficients."""
        lv, _ = self.datum.coweight_basis()
        out = self.central * self.datum.c
        for x, v in zip(self.logs, lv):
            out = out + x * v
        return out

    def log_power(self, phi) -> LogNumber:
        """``log a^phi``."""
        return LogNumber.coerce(pair(self.log_vector(), phi))

    def multiplicative(self) -> tuple[list, object]:
        def val(x):
            q = x.exp_rational()
            return q if q is not None else math.exp(float(x))

        return [val(x) for x in self.logs], val(self.central)

    def to_json(self) -> dict:
        s, z = self.multiplicative()
        show = lambda v: fmt(v) if isinstance(v, Fraction) else {"approx": v}
        return {"stratum": "interior", "s": [show(v) for v in s], "z": show(z)}


@dataclass(frozen=True)
class TorusStratumPoint:
    """A point of the boundary stratum ``A(J)``: coordinates ``y_j`` for ``j in J``."""

    datum: RootDatum
    J: tuple[int, ...]
    logs: tuple[LogNumber, ...]

    def __post_init__(self):
        J = tuple(sorted(self.datum.check_subset(self.J)))
        if len(J) == self.datum.size:
            raise FullSetError("strata are indexed by proper subsets")
        if len(self.logs) != len(J):
            raise MalformedSpec("one coordinate per element of J is required")
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "logs", tuple(LogNumber.coerce(x) for x in self.logs))

    @classmethod
    def from_multiplicative(cls, datum: RootDatum, J: Sequence[int], y: Sequence) -> "TorusStratumPoint":
        return cls(datum, tuple(J), tuple(_log(v) for v in y))

    def multiplicative(self) -> list:
        out = []
        for x in self.logs:
            q = x.exp_rational()
            out.append(q if q is not None else math.exp(float(x)))
        return out

    def to_json(self) -> dict:
        show = lambda v: fmt(v) if isinstance(v, Fraction) else {"approx": v}
        return {"stratum": list(self.J), "y": [show(v) for v in self.multiplicative()]}


def torus_origin(datum: RootDatum) -> TorusStratumPoint:
    return TorusStratumPoint(datum, (), ())


def torus_homotopy(h, t):
    """Contract the torus corner to ``o_0``: scale non-central coordinates by ``t``."""
    t = Fraction(t)
    if not 0 <= t <= 1:
        raise ValueError("t must lie in [0, 1]")
    datum = h.datum
    if t == 0:
        return torus_origin(datum)
    lt = LogNumber.log(t)
    if isinstance(h, TorusPoint):
        return TorusPoint(datum, tuple(x + lt for x in h.logs), h.central)
    return TorusStratumPoint(datum, h.J, tuple(x + lt for x in h.logs))


@dataclass(frozen=True)
class CornerStrata:
    """The strata of the corner ``c(A^+_{J, sigma})``."""

    datum: RootDatum
    J: tuple[int, ...]
    sigma: PositiveReal
    boundary: tuple[tuple[int, ...], ...]

    def labels(self) -> list:
        return ["interior"] + [list(K) for K in self.boundary]

    def contains(self, point) -> bool:
        """Strict inequalities ``x^{a_i} < sigma`` off ``J`` (resp. on ``K \\ J``)."""
        datum = self.datum
        J = set(self.J)
        ls = self.sigma.log
        if isinstance(point, TorusPoint):
            if any(point.logs[j - 1] != 0 for j in J):
                return False
            return all(point.logs[i - 1] < ls for i in datum.indices if i not in J)
        if point.J not in self.boundary:
            return False
        vals = dict(zip(point.J, point.logs))
        if any(vals[j] != 0 for j in J):
            return False
        return all(vals[k] < ls for k in point.J if k not in J)


def torus_corner_strata(datum: RootDatum, J: Iterable[int], sigma) -> CornerStrata:
    J = tuple(sorted(datum.check_subset(J)))
    if len(J) == datum.size:
        raise FullSetError("J must be proper")
    rest = [i for i in datum.indices if i not in J]
    boundary = []
    for mask in range(2 ** len(rest)):
        extra = [rest[b] for b in range(len(rest)) if mask >> b & 1]
        K = tuple(sorted(J + tuple(extra)))
        if len(K) < datum.size:
            boundary.append(K)
    boundary.sort(key=lambda K: (len(K), K))
    return CornerStrata(datum, J, PositiveReal.of(sigma), tuple(boundary))
