"""Seeded property suites shared by the CLI ``sweep`` command and the tests.

Each suite takes a sample count and a ``random.Random`` and returns the
number of cases checked plus a list of counterexamples (empty on success).
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable

from .corners import garland_split, projection_paths
from .errors import UnknownSuite
from .halfplane import Cusp, HPoint, canonical_pair, deg_inst, discs_overlap, exhaustive_canonical
from .loopu import IMCoords, TruncatedSeries, in_omega0, mat_mul, to_matrix, u_reduce
from .orthofam import from_weyl_orbit, verify_family
from .rationals import fmt
from .rootdata import CartanVector, RootDatum, pair

DATA = ("sl2", "sl3", "sl4", "g2")


def random_rational(rng: random.Random, bound: int = 50, positive: bool = False) -> Fraction:
    num = rng.randint(1, bound) if positive else rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def random_hpoint(rng: random.Random, bound: int = 50) -> HPoint:
    return HPoint(random_rational(rng, bound), random_rational(rng, bound, positive=True))


def random_vector(rng: random.Random, datum: RootDatum, bound: int = 20, d_part: bool = True) -> CartanVector:
    coords = [random_rational(rng, bound) for _ in range(datum.size)]
    coords.append(random_rational(rng, bound) if d_part else Fraction(0))
    return CartanVector(datum, coords)


def random_proper_subset(rng: random.Random, datum: RootDatum) -> tuple[int, ...]:
    while True:
        J = tuple(i for i in datum.indices if rng.random() < 0.5)
        if len(J) < datum.size:
            return J


def random_imcoords(rng: random.Random, N: int, bound: int = 20) -> IMCoords:
    rr = lambda: random_rational(rng, bound)
    sigma = [rr() for _ in range(N)]
    mu = [1] + [rr() for _ in range(N - 1)]
    tau = [0] + [rr() for _ in range(N - 1)]
    return IMCoords(TruncatedSeries.of(sigma, N), TruncatedSeries.of(mu, N), TruncatedSeries.of(tau, N))


# ---------------------------------------------------------------------------


def suite_ford_oracle(n: int, rng: random.Random):
    bad = []
    for _ in range(n):
        z = random_hpoint(rng)
        fast = canonical_pair(z)
        cusp, best = exhaustive_canonical(z)
        if fast.cusp != cusp or fast.max_im != best or deg_inst(z).max_im != best:
            bad.append({"z": str(z), "fast": fast.to_json(), "oracle": None if cusp is None else str(cusp)})
    return n, bad


def suite_garland_roundtrip(n: int, rng: random.Random):
    bad = []
    for k in range(n):
        datum = RootDatum.named(DATA[k % len(DATA)])
        r = random_rational(rng, 20, positive=True)
        H = random_vector(rng, datum, d_part=False)
        J = random_proper_subset(rng, datum)
        K = tuple(sorted(set(J) | set(random_proper_subset(rng, datum))))
        s = garland_split(H, r, J)
        ok = s.part + s.rest == H
        shifted = s.rest - r * datum.D
        ok = ok and all(pair(shifted, datum.simple_root(j)) == 0 for j in J)
        if len(K) < datum.size:
            direct, via = projection_paths(H, r, J, K)
            ok = ok and direct == via
        if not ok:
            bad.append({"datum": datum.matrix, "H": [fmt(x) for x in H.coords], "J": list(J), "r": fmt(r)})
    return n, bad


def suite_loopu_reduce(n: int, rng: random.Random):
    bad = []
    for _ in range(n):
        N = rng.randint(1, 8)
        u = random_imcoords(rng, N)
        red = u_reduce(u)
        ok = in_omega0(red.reduced) and red.gamma.is_integral()
        ok = ok and mat_mul(to_matrix(u), to_matrix(red.gamma)) == to_matrix(red.reduced)
        if not ok:
            bad.append(u.to_json())
    return n, bad


def suite_orbit_families(n: int, rng: random.Random):
    bad = []
    for k in range(n):
        datum = RootDatum.named(("sl2", "sl3")[k % 2])
        p = [Fraction(rng.randint(0, 6), rng.randint(1, 4)) for _ in datum.indices]
        T = CartanVector.from_coweight(datum, p, random_rational(rng, 5))
        L = rng.randint(1, 6 if datum.size == 2 else 4)
        fam = from_weyl_orbit(T, L)
        v = verify_family(fam)
        regular = all(x > 0 for x in p)
        if not v.valid or v.regular != regular:
            bad.append({"p": [fmt(x) for x in p], "L": L})
    return n, bad


def suite_disc_disjoint(n: int, rng: random.Random):
    bad = []
    for _ in range(n):
        s1, s2 = rng.randint(1, 20), rng.randint(1, 20)
        m1 = Cusp(rng.randint(-3 * s1, 3 * s1), s1)
        m2 = Cusp(rng.randint(-3 * s2, 3 * s2), s2)
        if m1 != m2 and discs_overlap(m1, m2):
            bad.append([str(m1), str(m2)])
    return n, bad


SUITES: dict[str, Callable] = {
    "ford-oracle": suite_ford_oracle,
    "garland-roundtrip": suite_garland_roundtrip,
    "loopu-reduce": suite_loopu_reduce,
    "orbit-families": suite_orbit_families,
    "disc-disjoint": suite_disc_disjoint,
}


def sweep(suite: str, n: int = 100, seed: int = 0) -> dict:
    if suite not in SUITES:
        raise UnknownSuite(f"unknown suite {suite!r}; known: {sorted(SUITES)}")
    checked, bad = SUITES[suite](n, random.Random(seed))
    out = {"pass": not bad, "checked": checked}
    if bad:
        out["counterexamples"] = bad[:10]
    return out
