"""The affine Weyl group as words in simple reflections.

A word ``(i_1, ..., i_k)`` denotes ``s_{i_1} ... s_{i_k}``; it acts on a
vector by applying the rightmost letter first.  Group elements are compared
by the integer images of the simple roots; the action on the root lattice
is faithful.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import IndexOutOfRange, LengthCapExceeded, NotARoot, OrientationError
from .rootdata import CartanVector, Functional, RootDatum, pair

LENGTH_CAP = 64


def _letters(datum: RootDatum, word: Iterable[int]) -> tuple[int, ...]:
    out = tuple(int(i) for i in word)
    for i in out:
        if not 1 <= i <= datum.size:
            raise IndexOutOfRange(f"letter {i} not in 1..{datum.size}")
    return out


def reflect_vector(datum: RootDatum, i: int, H: CartanVector) -> CartanVector:
    """``s_i(h) = h - <h, a_i> a^v_i``."""
    k = pair(H, datum.simple_root(i))
    return H - k * datum.coroot(i) if k else H


def reflect_functional(datum: RootDatum, i: int, phi: Functional) -> Functional:
    """Contragredient action ``s_i(phi) = phi - <a^v_i, phi> a_i``."""
    k = pair(datum.coroot(i), phi)
    return phi - k * datum.simple_root(i) if k else phi


def reflect_root(datum: RootDatum, i: int, b: tuple[int, ...]) -> tuple[int, ...]:
    """Reflection on simple-root coefficient vectors."""
    k = sum(datum.matrix[i - 1][j] * b[j] for j in range(datum.size))
    if not k:
        return b
    out = list(b)
    out[i - 1] -= k
    return tuple(out)


def _is_positive(b: Sequence[int]) -> bool:
    return all(x >= 0 for x in b) and any(b)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RealRoot:
    """A root ``alpha + n delta`` with ``alpha`` in the finite root system or 0."""

    finite_part: tuple[int, ...]
    level: int

    @property
    def is_real(self) -> bool:
        return any(self.finite_part)

    def coefficients(self, datum: RootDatum) -> tuple[int, ...]:
        """Coefficients over all simple roots ``a_1..a_{l+1}``."""
        return tuple(f + self.level * d for f, d in zip(self.finite_part + (0,), datum.d))

    @classmethod
    def from_coefficients(cls, datum: RootDatum, b: Sequence[int]) -> "RealRoot":
        n = int(b[-1])
        fin = tuple(int(x) - n * d for x, d in zip(b[:-1], datum.d[:-1]))
        root = cls(fin, n)
        root.validate(datum)
        return root

    def validate(self, datum: RootDatum) -> None:
        if len(self.finite_part) != datum.ell:
            raise NotARoot("finite part has the wrong length")
        if not self.is_real:
            if self.level == 0:
                raise NotARoot("zero is not a root")
            return
        fin = self.finite_part
        neg = tuple(-x for x in fin)
        if fin not in datum.finite_roots and neg not in datum.finite_roots:
            raise NotARoot(f"{fin} is not a root of the finite root system")

    def is_positive(self) -> bool:
        if self.level:
            return self.level > 0
        return all(x >= 0 for x in self.finite_part)

    def __neg__(self):
        return RealRoot(tuple(-x for x in self.finite_part), -self.level)

    def functional(self, datum: RootDatum) -> Functional:
        return datum.root_combination(self.coefficients(datum))

    def coroot(self, datum: RootDatum) -> CartanVector:
        """The coroot ``2 x_phi / (phi, phi)`` with ``x_{a_i} = a^v_i / eps_i``."""
        if not self.is_real:
            raise NotARoot("imaginary roots have no coroot")
        x = datum.zero_vector()
        for i, b in zip(datum.indices, self.coefficients(datum)):
            if b:
                x = x + (Fraction(b) / datum.epsilon[i - 1]) * datum.coroot(i)
        return (2 / datum.kac_pair(x, x)) * x

    def to_json(self) -> dict:
        return {"finite": list(self.finite_part), "level": self.level}


# ---------------------------------------------------------------------------


class WeylWord:
    """A word in the simple reflections of an affine root datum."""

    __slots__ = ("datum", "letters", "reduced", "_key")

    def __init__(self, datum: RootDatum, letters: Iterable[int] = (), reduced: bool = False):
        self.datum = datum
        self.letters = _letters(datum, letters)
        self.reduced = False
        self._key = None
        if reduced:
            length, _ = length_and_reduce(self)
            if length != len(self.letters):
                raise ValueError(f"word {self.letters} is not reduced")
            self.reduced = True

    def act(self, H):
        if isinstance(H, CartanVector):
            for i in reversed(self.letters):
                H = reflect_vector(self.datum, i, H)
            return H
        if isinstance(H, Functional):
            for i in reversed(self.letters):
                H = reflect_functional(self.datum, i, H)
            return H
        raise TypeError("can only act on CartanVector or Functional")

    def act_root(self, b: tuple[int, ...]) -> tuple[int, ...]:
        for i in reversed(self.letters):
            b = reflect_root(self.datum, i, b)
        return b

    def image_of_simple_root(self, i: int) -> RealRoot:
        b = tuple(int(k == i - 1) for k in range(self.datum.size))
        return RealRoot.from_coefficients(self.datum, self.act_root(b))

    def times(self, *letters: int) -> "WeylWord":
        return WeylWord(self.datum, self.letters + tuple(letters))

    def inverse(self) -> "WeylWord":
        return WeylWord(self.datum, reversed(self.letters))

    def key(self) -> tuple:
        """Canonical key for the group element: the images of the simple roots."""
        if self._key is None:
            n = self.datum.size
            self._key = tuple(self.act_root(tuple(int(k == i) for k in range(n))) for i in range(n))
        return self._key

    def same_element(self, other: "WeylWord") -> bool:
        return self.key() == other.key()

    def __len__(self):
        return len(self.letters)

    def __repr__(self):
        return f"WeylWord({list(self.letters)})"

    def to_json(self) -> list[int]:
        return list(self.letters)


def act(w: WeylWord, H):
    return w.act(H)


def length_and_reduce(w: WeylWord, cap: int = LENGTH_CAP) -> tuple[int, WeylWord]:
    """Length and a reduced word for the same element.

    Letters are appended one at a time.  When ``w(a_i) > 0`` the length grows;
    otherwise the exchange condition deletes the letter ``s_{j_p}`` for the
    unique ``p`` with ``s_{j_{p+1}} ... s_{j_k}(a_i) = a_{j_p}``.
    """
    datum = w.datum
    n = datum.size
    reduced: list[int] = []
    for i in w.letters:
        b = tuple(int(k == i - 1) for k in range(n))
        # walk right to left through the current reduced word
        drop = None
        for p in range(len(reduced) - 1, -1, -1):
            j = reduced[p]
            if b == tuple(int(k == j - 1) for k in range(n)):
                drop = p
                break
            b = reflect_root(datum, j, b)
        if drop is None:
            reduced.append(i)
            if len(reduced) > cap:
                raise LengthCapExceeded(f"length exceeds cap {cap}")
        else:
            del reduced[drop]
    out = WeylWord(datum, reduced)
    out.reduced = True
    return len(reduced), out


def inversion_set(w: WeylWord, cap: int = LENGTH_CAP) -> list[RealRoot]:
    """Positive roots sent negative by ``w`` (from a reduced word)."""
    length, red = length_and_reduce(w, cap)
    letters = red.letters
    out = []
    # inversions of s_{j1}..s_{jk} are s_{jk}..s_{j(p+1)}(a_{jp})
    for p in range(length):
        tail = WeylWord(w.datum, reversed(letters[p + 1 :]))
        out.append(tail.image_of_simple_root(letters[p]))
    return out


def min_coset_rep(w: WeylWord, J: Iterable[int]) -> WeylWord:
    """Minimal-length representative of ``w W(J)``."""
    datum = w.datum
    J = datum.check_subset(J)
    if J == frozenset(datum.indices):
        raise ValueError("J must be a proper subset")
    _, cur = length_and_reduce(w)
    changed = True
    while changed:
        changed = False
        for j in sorted(J):
            if not cur.image_of_simple_root(j).is_positive():
                _, cur = length_and_reduce(cur.times(j))
                changed = True
    return cur


@dataclass(frozen=True)
class BorelSubset:
    """The Borel subset ``B_w = w R_+`` of the positive Borel."""

    word: WeylWord

    def __eq__(self, other):
        return isinstance(other, BorelSubset) and self.word.same_element(other.word)

    def __hash__(self):
        return hash(self.word.key())

    def contains(self, root: RealRoot) -> bool:
        """``root in w R_+`` iff ``w^{-1}(root) > 0``."""
        b = self.word.inverse().act_root(root.coefficients(self.word.datum))
        return _is_positive(b)


def borel_adjacency(B: BorelSubset, alpha: int) -> tuple[BorelSubset, RealRoot]:
    """Neighbour ``B_{w s_alpha}`` and the separating root ``w(a_alpha)``."""
    w = B.word
    root = w.image_of_simple_root(alpha)
    if not root.is_positive():
        raise OrientationError(f"w(a_{alpha}) is negative; use the opposite orientation")
    return BorelSubset(w.times(alpha)), root
