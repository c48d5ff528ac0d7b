"""Orthogonal families of Cartan vectors indexed by Borel subsets.

A family assigns ``Y_B`` to each Borel subset ``B`` in a finite support.  For
adjacent ``B_1 = B_w`` and ``B_2 = B_{w s_i}`` (with ``w(a_i) > 0``) the
difference ``Y_{B_1} - Y_{B_2}`` must be ``r`` times the coroot of the
separating root ``w(a_i)``, with ``r >= 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import ChainLeavesSupport, EmptySupport, NotDominant
from .halfplane import HPoint, hb_coefficient
from .lognum import LogNumber
from .rootdata import CartanVector, RootDatum, pair
from .weyl import BorelSubset, RealRoot, WeylWord, length_and_reduce


@dataclass
class OrthogonalFamily:
    datum: RootDatum
    values: dict  # BorelSubset -> CartanVector

    @classmethod
    def from_pairs(cls, datum: RootDatum, pairs) -> "OrthogonalFamily":
        vals = {}
        for word, vec in pairs:
            vals[BorelSubset(WeylWord(datum, word))] = vec
        return cls(datum, vals)

    def support(self) -> list[BorelSubset]:
        return list(self.values)

    def adjacent_pairs(self):
        """Oriented adjacent pairs ``(B_w, B_{w s_i}, w(a_i))`` inside the support."""
        keys = {b: b for b in self.values}
        seen = set()
        for B in self.values:
            for i in self.datum.indices:
                root = B.word.image_of_simple_root(i)
                if not root.is_positive():
                    continue
                nb = BorelSubset(B.word.times(i))
                if nb in keys:
                    edge = (B, nb)
                    if edge not in seen:
                        seen.add(edge)
                        yield keys[B], keys[nb], root

    def to_json(self) -> list:
        return [{"word": b.word.to_json(), "vector": v.to_json()} for b, v in self.values.items()]


def _proportion(diff: CartanVector, coroot: CartanVector):
    """``r`` with ``diff = r * coroot``, or ``None``."""
    r = None
    for a, b in zip(diff.coords, coroot.coords):
        if b == 0:
            if a != 0:
                return None
            continue
        q = a / b
        if r is None:
            r = q
        elif q != r:
            return None
    return r if r is not None else Fraction(0)


@dataclass(frozen=True)
class Verification:
    valid: bool
    regular: bool
    violations: list
    coefficients: list

    def to_json(self) -> dict:
        from .rationals import fmt

        return {
            "valid": self.valid,
            "regular": self.regular,
            "violations": [
                {"pair": [a.word.to_json(), b.word.to_json()], "r": None if r is None else fmt(r)}
                for a, b, r in self.violations
            ],
        }


def verify_family(f: OrthogonalFamily) -> Verification:
    if len(f.values) < 2:
        raise EmptySupport("support needs at least two Borel subsets")
    violations, coeffs = [], []
    for B1, B2, root in f.adjacent_pairs():
        r = _proportion(f.values[B1] - f.values[B2], root.coroot(f.datum))
        coeffs.append((B1, B2, r))
        if r is None or r < 0:
            violations.append((B1, B2, r))
    regular = not violations and all(r > 0 for _, _, r in coeffs)
    return Verification(not violations, regular, violations, coeffs)


def words_up_to(datum: RootDatum, L: int) -> list[WeylWord]:
    """One reduced word for every element of length at most ``L``."""
    out = {(): WeylWord(datum, ())}
    frontier = [WeylWord(datum, ())]
    keys = {frontier[0].key()}
    for _ in range(L):
        nxt = []
        for w in frontier:
            for i in datum.indices:
                if w.image_of_simple_root(i).is_positive():
                    v = w.times(i)
                    k = v.key()
                    if k not in keys:
                        keys.add(k)
                        nxt.append(v)
        frontier = nxt
        for v in nxt:
            out[v.letters] = v
    return list(out.values())


def from_weyl_orbit(T: CartanVector, L: int) -> OrthogonalFamily:
    """``Y_{B_w} = w T`` over ``l(w) <= L``; requires ``T`` dominant."""
    datum = T.datum
    if any(pair(T, datum.simple_root(i)) < 0 for i in datum.indices):
        raise NotDominant("T must pair nonnegatively with every simple root")
    fam = OrthogonalFamily(datum, {BorelSubset(w): w.act(T) for w in words_up_to(datum, L)})
    if len(fam.values) >= 2:
        assert verify_family(fam).valid
    return fam


def chain_witness(f: OrthogonalFamily, B: BorelSubset, Bp: BorelSubset) -> dict:
    """Nonnegative ``n_a`` with ``Y_B - Y_{B'} = sum n_a a^v`` along a reduced chain.

    With ``B = B_w`` and ``B' = B_{w u}`` for ``u = w^{-1} w'`` reduced, the
    chain steps through ``B_{w s_{u_1}}, B_{w s_{u_1} s_{u_2}}, ...``, a
    minimal gallery; each step crosses a wall whose root lies in ``B`` and in
    ``-B'``.
    """
    keys = {b: b for b in f.values}
    if B not in keys or Bp not in keys:
        raise ChainLeavesSupport("both endpoints must be in the support")
    datum = f.datum
    _, u = length_and_reduce(WeylWord(datum, B.word.inverse().letters + Bp.word.letters))
    witness: dict[RealRoot, Fraction] = {}
    cur = keys[B]
    for i in u.letters:
        # the wall crossed is v(a_i) for the current v; it lies in B_v and in -B_{v s_i}
        # whatever its absolute sign, so no orientation is imposed here
        root = cur.word.image_of_simple_root(i)
        nb = BorelSubset(cur.word.times(i))
        if nb not in keys:
            raise ChainLeavesSupport(f"chain leaves the support at {nb.word}")
        r = _proportion(f.values[cur] - f.values[keys[nb]], root.coroot(datum))
        if r is None:
            raise ValueError("family is not orthogonal along the chain")
        witness[root] = witness.get(root, Fraction(0)) + r
        cur = BorelSubset(cur.word.times(i))
    return witness


def resum_witness(datum: RootDatum, witness: Mapping) -> CartanVector:
    out = datum.zero_vector()
    for root, n in witness.items():
        out = out + n * root.coroot(datum)
    return out


# ---------------------------------------------------------------------------
# the rank-one half-plane family


def halfplane_family(z: HPoint) -> dict[str, LogNumber]:
    """Coefficients (on the coroot ``H``) of ``H_B(z)`` and ``w H_B(z w)``.

    Here ``w`` is the nontrivial Weyl element of ``SL2``; ``z w`` corresponds
    to ``-1/z`` and ``w`` negates the Cartan.
    """
    zw = z.inverted()
    return {"H_B(z)": hb_coefficient(z), "w.H_B(zw)": -hb_coefficient(zw)}


def halfplane_dominance_gap(z: HPoint) -> LogNumber:
    """``H_B(z) - w H_B(z w)`` as a multiple of ``H``; nonnegative for all ``z``."""
    fam = halfplane_family(z)
    return fam["H_B(z)"] - fam["w.H_B(zw)"]
