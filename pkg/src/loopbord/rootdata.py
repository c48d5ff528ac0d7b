"""Generalized Cartan matrices and the extended Cartan algebra.

Indices are 1-based in the mathematics and 0-based in code: node ``i`` of
the index set ``I = {1..l+1}`` is position ``i - 1``, and the affine node
``l+1`` is the last position.

A :class:`CartanVector` has coordinates in the basis ``{a^v_1..a^v_{l+1}, D}``
(simple coroots and the degree derivation); a :class:`Functional` has
coordinates in the dual basis ``{lambda_1..lambda_{l+1}, delta}``.  The
pairing between them is therefore a dot product.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from . import linalg
from .errors import DatumMismatch, IndexOutOfRange, NotGCM, UnsupportedType
from .rationals import fmt

FINITE = "finite"
AFFINE = "affine-untwisted"


# ---------------------------------------------------------------------------
# classification


def _check_gcm(A) -> tuple[tuple[int, ...], ...]:
    try:
        rows = tuple(tuple(int(x) for x in r) for r in A)
    except (TypeError, ValueError) as exc:
        raise NotGCM(f"not an integer matrix: {exc}") from None
    n = len(rows)
    if n == 0 or any(len(r) != n for r in rows):
        raise NotGCM("matrix must be square and nonempty")
    for r, orig in zip(rows, A):
        if any(x != y for x, y in zip(r, orig)):
            raise NotGCM("entries must be integers")
    for i in range(n):
        if rows[i][i] != 2:
            raise NotGCM(f"diagonal entry a_{i+1}{i+1} = {rows[i][i]} is not 2")
        for j in range(n):
            if i != j:
                if rows[i][j] > 0:
                    raise NotGCM(f"off-diagonal entry a_{i+1}{j+1} is positive")
                if (rows[i][j] == 0) != (rows[j][i] == 0):
                    raise NotGCM(f"a_{i+1}{j+1} and a_{j+1}{i+1} must vanish together")
    return rows


def _connected(A) -> bool:
    n = len(A)
    seen, stack = {0}, [0]
    while stack:
        i = stack.pop()
        for j in range(n):
            if A[i][j] and j not in seen:
                seen.add(j)
                stack.append(j)
    return len(seen) == n


def _principal(A, idx) -> list[list[int]]:
    return [[A[i][j] for j in idx] for i in idx]


def _primitive_positive(vec) -> tuple[int, ...] | None:
    den = math.lcm(*(Fraction(v).denominator for v in vec))
    ints = [int(Fraction(v) * den) for v in vec]
    g = math.gcd(*ints)
    ints = [x // g for x in ints]
    if all(x < 0 for x in ints):
        ints = [-x for x in ints]
    if not all(x > 0 for x in ints):
        return None
    return tuple(ints)


@lru_cache(maxsize=None)
def finite_positive_roots(A: tuple[tuple[int, ...], ...]) -> tuple[tuple[int, ...], ...]:
    """Positive roots of a finite-type GCM as simple-root coefficient vectors.

    Computed as the orbit of the simple roots under the simple reflections
    ``s_i(b) = b - (A b)_i e_i``.  Sorted by height, then lexicographically.
    """
    n = len(A)
    simple = [tuple(int(i == k) for k in range(n)) for i in range(n)]
    seen = set(simple)
    queue = list(simple)
    while queue:
        b = queue.pop()
        for i in range(n):
            k = sum(A[i][j] * b[j] for j in range(n))
            if k:
                c = list(b)
                c[i] -= k
                c = tuple(c)
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
            if len(seen) > 10_000:
                raise UnsupportedType("root orbit does not close; matrix is not of finite type")
    return tuple(sorted((b for b in seen if all(x >= 0 for x in b)), key=lambda b: (sum(b), b)))


@dataclass(frozen=True)
class Classification:
    kind: str
    d: tuple[int, ...] | None = None
    d_check: tuple[int, ...] | None = None

    def to_json(self) -> dict:
        out = {"kind": self.kind}
        if self.d is not None:
            out["d"] = list(self.d)
            out["d_check"] = list(self.d_check)
        return out


def classify_gcm(A) -> Classification:
    """Return ``finite`` or ``affine-untwisted`` (with null vectors)."""
    rows = _check_gcm(A)
    n = len(rows)
    minors = {
        idx: linalg.determinant(_principal(rows, idx))
        for k in range(1, n + 1)
        for idx in itertools.combinations(range(n), k)
    }
    if all(m > 0 for m in minors.values()):
        return Classification(FINITE)
    full = tuple(range(n))
    proper_ok = all(m > 0 for idx, m in minors.items() if idx != full)
    if not (_connected(rows) and proper_ok and minors[full] == 0):
        raise UnsupportedType("matrix is neither of finite nor of affine type")
    (null,) = linalg.nullspace(rows)
    (null_t,) = linalg.nullspace([list(r) for r in zip(*rows)])
    d, d_check = _primitive_positive(null), _primitive_positive(null_t)
    if d is None or d_check is None:  # pragma: no cover - impossible for affine type
        raise UnsupportedType("null vector is not positive")
    if d[-1] != 1 or d_check[-1] != 1:
        raise UnsupportedType("affine node must be the last node with d_{l+1} = 1")
    # untwisted iff d restricted to the finite nodes is the highest root there
    finite = tuple(r[:-1] for r in rows[:-1])
    if n > 1 and finite_positive_roots(finite)[-1] != d[:-1]:
        raise UnsupportedType("twisted affine type is not supported")
    return Classification(AFFINE, d, d_check)


# ---------------------------------------------------------------------------
# vectors


class _Vec:
    __slots__ = ("datum", "coords")
    _kind = ""

    def __init__(self, datum: "RootDatum", coords: Iterable):
        coords = tuple(c if not isinstance(c, int) else Fraction(c) for c in coords)
        if len(coords) != datum.size + 1:
            raise IndexOutOfRange(f"expected {datum.size + 1} coordinates, got {len(coords)}")
        self.datum = datum
        self.coords = coords

    def _same(self, other):
        if type(other) is not type(self):
            return False
        if other.datum != self.datum:
            raise DatumMismatch("vectors belong to different root data")
        return True

    def __add__(self, other):
        if not self._same(other):
            return NotImplemented
        return type(self)(self.datum, (a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        if not self._same(other):
            return NotImplemented
        return type(self)(self.datum, (a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return type(self)(self.datum, (-a for a in self.coords))

    def __mul__(self, k):
        if isinstance(k, _Vec):
            return NotImplemented
        return type(self)(self.datum, (a * k for a in self.coords))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Fraction(k))

    def __eq__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self.datum == other.datum and self.coords == other.coords

    def __hash__(self):
        return hash((self._kind, self.coords))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __repr__(self):
        return f"{type(self).__name__}({', '.join(str(c) for c in self.coords)})"


class CartanVector(_Vec):
    """Element of the extended Cartan algebra in the basis ``{a^v_i, D}``."""

    __slots__ = ()
    _kind = "coroot"

    @property
    def d_coeff(self):
        return self.coords[-1]

    def coweight_coords(self):
        """``(p, m)`` with ``self = sum p_i lam^v_i + m c``."""
        p = tuple(pair(self, self.datum.simple_root(i)) for i in self.datum.indices)
        return p, self.coords[-2]

    @classmethod
    def from_coweight(cls, datum: "RootDatum", p: Sequence, m=0) -> "CartanVector":
        out = m * datum.c
        for pi, lv in zip(p, datum.coweight_basis()[0]):
            out = out + pi * lv
        return out

    def to_json(self, basis: str = "coroot") -> dict:
        if basis == "coweight":
            p, m = self.coweight_coords()
            return {"basis": "coweight", "coords": [_fmt(x) for x in p], "central": _fmt(m)}
        return {"basis": "coroot", "coords": [_fmt(x) for x in self.coords]}


class Functional(_Vec):
    """Element of the dual space in the basis ``{lambda_i, delta}``."""

    __slots__ = ()
    _kind = "weight"

    def to_json(self) -> dict:
        return {"basis": "weight", "coords": [_fmt(x) for x in self.coords]}


def _fmt(x):
    if isinstance(x, (int, Fraction)):
        return fmt(x)
    return x.to_json()


def pair(H: CartanVector, phi: Functional):
    """The canonical pairing ``<H, phi>``."""
    if not isinstance(H, CartanVector) or not isinstance(phi, Functional):
        raise TypeError("pair expects (CartanVector, Functional)")
    if H.datum != phi.datum:
        raise DatumMismatch("vectors belong to different root data")
    total = Fraction(0)
    for a, b in zip(H.coords, phi.coords):
        if a and b:
            total = total + a * b
    return total


# ---------------------------------------------------------------------------
# root data


@dataclass(frozen=True)
class RootDatum:
    """An untwisted affine root datum attached to a GCM."""

    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        cls = classify_gcm(self.matrix)
        if cls.kind != AFFINE:
            raise UnsupportedType("an affine-untwisted GCM is required")
        object.__setattr__(self, "matrix", tuple(tuple(int(x) for x in r) for r in self.matrix))
        object.__setattr__(self, "_cls", cls)
        # the Kac form must be symmetric for the eps_i = d_i / d^v_i choice
        g = self.gram
        if any(g[i][j] != g[j][i] for i in range(self.size + 1) for j in range(self.size + 1)):
            raise UnsupportedType("Kac form is not symmetric")  # pragma: no cover

    def __eq__(self, other):
        return isinstance(other, RootDatum) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"RootDatum({[list(r) for r in self.matrix]})"

    @classmethod
    def named(cls, name: str) -> "RootDatum":
        key = name.lower().replace("affine", "").replace("_", "").replace("-", "").strip()
        if key in NAMED:
            return cls(NAMED[key])
        raise UnsupportedType(f"unknown datum name {name!r}")

    # -- basic data ---------------------------------------------------
    @property
    def size(self) -> int:
        return len(self.matrix)

    @property
    def ell(self) -> int:
        return self.size - 1

    @property
    def indices(self) -> range:
        """The index set ``I`` as 1-based node labels."""
        return range(1, self.size + 1)

    @property
    def finite_indices(self) -> range:
        return range(1, self.size)

    @property
    def d(self) -> tuple[int, ...]:
        return self._cls.d

    @property
    def d_check(self) -> tuple[int, ...]:
        return self._cls.d_check

    @cached_property
    def epsilon(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(a, b) for a, b in zip(self.d, self.d_check))

    @cached_property
    def h_check(self) -> int:
        """Dual Coxeter number ``1 + sum of d^v_i over the finite nodes``."""
        return 1 + sum(self.d_check[:-1])

    def a(self, i: int, j: int) -> int:
        return self.matrix[self._ix(i)][self._ix(j)]

    def _ix(self, i: int) -> int:
        if not 1 <= i <= self.size:
            raise IndexOutOfRange(f"node {i} not in 1..{self.size}")
        return i - 1

    def check_subset(self, J: Iterable[int]) -> frozenset[int]:
        J = frozenset(J)
        for j in J:
            self._ix(j)
        return J

    # -- distinguished vectors -----------------------------------------
    def coroot(self, i: int) -> CartanVector:
        k = self._ix(i)
        return CartanVector(self, (int(m == k) for m in range(self.size + 1)))

    @cached_property
    def D(self) -> CartanVector:
        return CartanVector(self, (int(m == self.size) for m in range(self.size + 1)))

    @cached_property
    def c(self) -> CartanVector:
        return CartanVector(self, list(self.d_check) + [0])

    def zero_vector(self) -> CartanVector:
        return CartanVector(self, [0] * (self.size + 1))

    def fundamental_weight(self, i: int) -> Functional:
        k = self._ix(i)
        return Functional(self, (int(m == k) for m in range(self.size + 1)))

    def zero_functional(self) -> Functional:
        return Functional(self, [0] * (self.size + 1))

    def simple_root(self, k: int) -> Functional:
        """``a_k = sum_m a_{mk} lambda_m + [k = l+1] delta``."""
        kk = self._ix(k)
        col = [self.matrix[m][kk] for m in range(self.size)]
        return Functional(self, col + [int(kk == self.size - 1)])

    @cached_property
    def delta(self) -> Functional:
        out = self.zero_functional()
        for i, di in zip(self.indices, self.d):
            out = out + di * self.simple_root(i)
        return out

    def root_combination(self, coeffs: Sequence) -> Functional:
        out = self.zero_functional()
        for i, b in zip(self.indices, coeffs):
            if b:
                out = out + b * self.simple_root(i)
        return out

    def coroot_combination(self, coeffs: Sequence) -> CartanVector:
        return CartanVector(self, list(coeffs) + [0])

    # -- the Kac form --------------------------------------------------
    @cached_property
    def gram(self) -> tuple[tuple[Fraction, ...], ...]:
        """Gram matrix of the Kac form on ``{a^v_1..a^v_{l+1}, D}``."""
        n = self.size
        eps = self.epsilon
        g = [[Fraction(0)] * (n + 1) for _ in range(n + 1)]
        for i in range(n):
            for j in range(n):
                g[i][j] = self.matrix[j][i] * eps[i]
            g[i][n] = eps[i] if i == n - 1 else Fraction(0)
            g[n][i] = g[i][n]
        return tuple(tuple(r) for r in g)

    def kac_pair(self, x: CartanVector, y: CartanVector):
        if x.datum != self or y.datum != self:
            raise DatumMismatch("vectors belong to a different root datum")
        g = self.gram
        total = Fraction(0)
        for i, xi in enumerate(x.coords):
            if xi:
                for j, yj in enumerate(y.coords):
                    if yj and g[i][j]:
                        total = total + xi * yj * g[i][j]
        return total

    def nu(self, x: CartanVector) -> Functional:
        """The functional ``(x, .)`` induced by the Kac form."""
        basis = [self.coroot(i) for i in self.indices] + [self.D]
        return Functional(self, (self.kac_pair(x, b) for b in basis))

    # -- coweights, rho ------------------------------------------------
    @lru_cache(maxsize=None)
    def coweight_basis(self) -> tuple[tuple[CartanVector, ...], CartanVector]:
        """``((lam^v_1..lam^v_{l+1}), psi^v)``: the basis dual to ``{a_i, lambda_{l+1}}``."""
        n = self.size
        basis = [self.coroot(i) for i in self.indices] + [self.D]
        duals = [self.simple_root(i) for i in self.indices] + [self.fundamental_weight(n)]
        rows = [[pair(b, phi) for b in basis] for phi in duals]
        out = []
        for k in range(n + 1):
            sol = linalg.solve(rows, [int(m == k) for m in range(n + 1)])
            out.append(CartanVector(self, sol))
        return tuple(out[:n]), out[n]

    @cached_property
    def rho(self) -> Functional:
        return Functional(self, [1] * self.size + [0])

    @cached_property
    def rho_check(self) -> CartanVector:
        """``sum_i lam^v_i``: pairs to 1 with every simple root."""
        out = self.zero_vector()
        for v in self.coweight_basis()[0]:
            out = out + v
        return out

    def finite_fundamental_weight(self, j: int) -> Functional:
        """Ambient form of the fundamental weight of the finite root system."""
        if j not in self.finite_indices:
            raise IndexOutOfRange(f"{j} is not a finite node")
        return self.fundamental_weight(j) - self.d_check[j - 1] * self.fundamental_weight(self.size)

    def rho_decomposition_classical(self) -> tuple[Functional, int]:
        """``(rho_o, h^v)`` with ``rho = rho_o + h^v lambda_{l+1}`` (asserted)."""
        rho_o = self.zero_functional()
        for j in self.finite_indices:
            rho_o = rho_o + self.finite_fundamental_weight(j)
        hv = self.h_check
        assert rho_o + hv * self.fundamental_weight(self.size) == self.rho
        return rho_o, hv

    def tits_cone_contains(self, H: CartanVector) -> bool:
        return pair(H, self.delta) < 0

    # -- finite part ---------------------------------------------------
    @cached_property
    def finite_matrix(self) -> tuple[tuple[int, ...], ...]:
        return tuple(r[:-1] for r in self.matrix[:-1])

    @cached_property
    def finite_roots(self) -> tuple[tuple[int, ...], ...]:
        return finite_positive_roots(self.finite_matrix)

    def dominance_leq(self, x: CartanVector, y: CartanVector) -> bool:
        """``x <= y``: ``y - x`` is a nonnegative combination of simple coroots."""
        diff = y - x
        return diff.d_coeff == 0 and all(v >= 0 for v in diff.coords[:-1])


def affine_sl(n: int) -> tuple[tuple[int, ...], ...]:
    """Affine ``sl_n`` (``n >= 2``), affine node last."""
    if n == 2:
        return ((2, -2), (-2, 2))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
        rows[i][(i + 1) % n] = -1
        rows[i][(i - 1) % n] = -1
    return tuple(tuple(r) for r in rows)


# affine G2: node 1 long, node 2 short, node 3 affine; d = (2, 3, 1), d^v = (2, 1, 1)
AFFINE_G2 = ((2, -1, -1), (-3, 2, 0), (-1, 0, 2))

NAMED = {
    "sl2": affine_sl(2),
    "a1": affine_sl(2),
    "sl3": affine_sl(3),
    "a2": affine_sl(3),
    "sl4": affine_sl(4),
    "a3": affine_sl(4),
    "g2": AFFINE_G2,
}
