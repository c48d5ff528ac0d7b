"""The SL2(Z) instance: Iwasawa coordinates, Ford discs, canonical pairs.

A point ``z = x + iy`` is unstable exactly when it lies in one of the open
Ford discs ``D(r/s)`` (or in ``D(inf) = {y > 1}``), and the cusp of that
disc is its canonical flag.  Degrees are kept multiplicative: the quantity
compared everywhere is ``Im(gamma_m z) = y / |sz - r|^2``.

Search bound: ``|sz - r|^2 = (sx - r)^2 + s^2 y^2 >= s^2 y^2``, so a cusp with
denominator ``s`` has ``Im(gamma_m z) <= 1/(s^2 y)``.  To reach a value
``>= b`` one needs ``s^2 <= 1/(y b)`` and ``(sx - r)^2 <= y/b - s^2 y^2``.
With ``b = 1`` this gives the familiar ``s <= 1/sqrt(y)``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import EmptyWindow, SchemaError
from .lognum import SIEGEL_T0, LogNumber, PositiveReal
from .rationals import fmt, nearest_integer, parse_rational

OMEGA0 = (Fraction(-1, 2), Fraction(1, 2))

_NUM = r"[+-]?\d+(?:/\d+)?"
_Z_FULL = re.compile(rf"^({_NUM})([+-])(\d+(?:/\d+)?)?\*?i$")
_Z_IM = re.compile(rf"^({_NUM})?\*?i$")


@dataclass(frozen=True)
class HPoint:
    x: Fraction
    y: Fraction

    def __post_init__(self):
        object.__setattr__(self, "x", Fraction(self.x))
        object.__setattr__(self, "y", Fraction(self.y))
        if self.y <= 0:
            raise ValueError("points of the upper half-plane need y > 0")

    @classmethod
    def parse(cls, text: str) -> "HPoint":
        """Parse ``"1/2+1/5i"``, ``"2i"``, ``"3-1/2i"``, ``"0/1+1/1i"``."""
        t = text.replace(" ", "")
        m = _Z_FULL.match(t)
        if m:
            re_part, sign, im = m.groups()
            y = parse_rational(im) if im else Fraction(1)
            return cls(parse_rational(re_part), y if sign == "+" else -y)
        m = _Z_IM.match(t)
        if m:
            return cls(0, parse_rational(m.group(1)) if m.group(1) else 1)
        raise SchemaError(f"cannot parse half-plane point {text!r}")

    def norm2(self) -> Fraction:
        return self.x * self.x + self.y * self.y

    def inverted(self) -> "HPoint":
        """``-1/z``."""
        n = self.norm2()
        return HPoint(-self.x / n, self.y / n)

    def __str__(self):
        return f"{fmt(self.x)}+{fmt(self.y)}i"

    def to_json(self) -> dict:
        return {"x": fmt(self.x), "y": fmt(self.y)}


def mobius(g, z: HPoint) -> HPoint:
    """``(az + b)/(cz + d)`` for an integer matrix of determinant 1."""
    (a, b), (c, d) = g
    den = (c * z.x + d) ** 2 + (c * z.y) ** 2
    x = (a * c * z.norm2() + (a * d + b * c) * z.x + b * d) / den
    y = (a * d - b * c) * z.y / den
    return HPoint(x, y)


def matmul(g, h):
    return tuple(tuple(sum(g[i][k] * h[k][j] for k in range(2)) for j in range(2)) for i in range(2))


IDENTITY = ((1, 0), (0, 1))


@dataclass(frozen=True)
class Cusp:
    """``r/s`` in lowest terms with ``s >= 0``; ``inf`` is ``(1, 0)``."""

    r: int
    s: int

    def __post_init__(self):
        r, s = int(self.r), int(self.s)
        if r == 0 and s == 0:
            raise ValueError("(0, 0) is not a cusp")
        g = math.gcd(r, s)
        r, s = r // g, s // g
        if s < 0 or (s == 0 and r < 0):
            r, s = -r, -s
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @classmethod
    def infinity(cls) -> "Cusp":
        return cls(1, 0)

    @classmethod
    def parse(cls, text: str) -> "Cusp":
        if text.strip().lower() in ("inf", "infinity", "oo"):
            return cls.infinity()
        q = parse_rational(text)
        return cls(q.numerator, q.denominator)

    @property
    def is_infinity(self) -> bool:
        return self.s == 0

    def gamma(self):
        """A matrix ``(a b; s -r)`` of determinant 1 with ``gamma(r/s) = inf``."""
        if self.is_infinity:
            return IDENTITY
        u, v = _bezout(self.r, self.s)  # u r + v s = 1
        return ((-u, -v), (self.s, -self.r))

    def transform(self, g) -> "Cusp":
        (a, b), (c, d) = g
        return Cusp(a * self.r + b * self.s, c * self.r + d * self.s)

    def __str__(self):
        return "inf" if self.is_infinity else fmt(Fraction(self.r, self.s))

    def sort_key(self):
        return (self.s == 0, Fraction(self.r, self.s) if self.s else 0)


def _bezout(a: int, b: int) -> tuple[int, int]:
    old_r, r, old_s, s, old_t, t = a, b, 1, 0, 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_s, old_t = -old_s, -old_t
    return old_s, old_t


# ---------------------------------------------------------------------------


def iwasawa(z: HPoint) -> dict:
    """``a``- and ``n``-coordinates and ``<rho, H_B(z)> = -1/2 log y`` as a pair."""
    return {"a_coord": z.y, "n_coord": z.x, "rho_value": (Fraction(-1, 2), z.y)}


def hb_coefficient(z: HPoint) -> LogNumber:
    """``H_B(z) = -1/2 log(Im z) H``: the coefficient on ``H``."""
    return LogNumber.log(z.y) * Fraction(-1, 2)


def im_at_cusp(z: HPoint, m: Cusp) -> Fraction:
    if m.is_infinity:
        return z.y
    return z.y / ((m.s * z.x - m.r) ** 2 + (m.s * z.y) ** 2)


def _floor_sqrt(q: Fraction) -> int:
    return math.isqrt(q.numerator * q.denominator) // q.denominator if q > 0 else 0


@dataclass(frozen=True)
class DegInst:
    max_im: Fraction
    argmax: tuple[Cusp, ...]
    semistable: bool

    def additive(self) -> LogNumber:
        """``-1/2 log(max_im)``."""
        return LogNumber.log(self.max_im) * Fraction(-1, 2)

    def to_json(self) -> dict:
        return {
            "max_im": fmt(self.max_im),
            "cusp": [str(c) for c in self.argmax] if len(self.argmax) > 1 else str(self.argmax[0]),
            "semistable": self.semistable,
            "degree_approx": float(self.additive()),
        }


def deg_inst(z: HPoint) -> DegInst:
    """Maximum of ``Im(gamma_m z)`` over all cusps, its argmax, and semistability."""
    best = z.y
    arg = [Cusp.infinity()]
    # shrink the search as better cusps are found
    s = 1
    while s * s * z.y * best <= 1:
        for m in cusps_reaching_s(z, s, best):
            v = im_at_cusp(z, m)
            if v > best:
                best, arg = v, [m]
            elif v == best and m not in arg:
                arg.append(m)
        s += 1
    arg.sort(key=Cusp.sort_key)
    return DegInst(best, tuple(arg), best <= 1)


def cusps_reaching_s(z: HPoint, s: int, bound: Fraction) -> list[Cusp]:
    """Cusps of denominator ``s`` with ``im_at_cusp >= bound``."""
    room = z.y / bound - (s * z.y) ** 2
    if room < 0:
        return []
    w = _floor_sqrt(room) + 1
    centre = s * z.x
    return [
        Cusp(r, s)
        for r in range(math.floor(centre) - w, math.ceil(centre) + w + 1)
        if math.gcd(r, s) == 1 and (centre - r) ** 2 <= room
    ]


SEMISTABLE = "semistable"


@dataclass(frozen=True)
class CanonicalPair:
    """``cell`` is ``"B"`` with a cusp, or ``"semistable"``."""

    cell: str
    cusp: Cusp | None
    max_im: Fraction

    def to_json(self) -> dict:
        out = {"cell": self.cell}
        if self.cusp is not None:
            out["cusp"] = str(self.cusp)
        out["max_im"] = fmt(self.max_im)
        return out


def canonical_pair(z: HPoint) -> CanonicalPair:
    info = deg_inst(z)
    if info.semistable:
        return CanonicalPair(SEMISTABLE, None, info.max_im)
    (cusp,) = info.argmax  # open Ford discs are disjoint
    return CanonicalPair("B", cusp, info.max_im)


# ---------------------------------------------------------------------------
# Ford discs


@dataclass(frozen=True)
class FordDisc:
    cusp: Cusp

    @property
    def center(self) -> tuple[Fraction, Fraction] | None:
        if self.cusp.is_infinity:
            return None
        s = self.cusp.s
        return Fraction(self.cusp.r, s), Fraction(1, 2 * s * s)

    @property
    def radius(self) -> Fraction | None:
        return None if self.cusp.is_infinity else Fraction(1, 2 * self.cusp.s**2)

    def contains(self, z: HPoint) -> bool:
        """Membership in the open disc (``y > 1`` for ``inf``)."""
        if self.cusp.is_infinity:
            return z.y > 1
        (cx, cy), R = self.center, self.radius
        return (z.x - cx) ** 2 + (z.y - cy) ** 2 < R * R


def discs_overlap(m1: Cusp, m2: Cusp) -> bool:
    """Whether the open discs of two distinct finite cusps intersect."""
    d1, d2 = FordDisc(m1), FordDisc(m2)
    (x1, y1), (x2, y2) = d1.center, d2.center
    return (x1 - x2) ** 2 + (y1 - y2) ** 2 < (d1.radius + d2.radius) ** 2


def exhaustive_canonical(z: HPoint) -> tuple[Cusp | None, Fraction]:
    """Reference oracle: brute force over every cusp with ``s <= ceil(1/sqrt(y))``.

    Scans ``r`` over a window of half-width ``ceil(sqrt(y)) + 1`` around
    ``sx`` and decides instability by open Ford-disc membership.  Returns the
    unstable cusp (or ``None``) and the exhaustive maximum of ``Im``.
    """
    inv = 1 / z.y
    smax = _floor_sqrt(inv)
    if smax * smax < inv:
        smax += 1
    best, where = z.y, [Cusp.infinity()]
    inside = [Cusp.infinity()] if FordDisc(Cusp.infinity()).contains(z) else []
    half = _floor_sqrt(z.y) + 2
    for s in range(1, smax + 1):
        centre = s * z.x
        for r in range(math.floor(centre) - half, math.ceil(centre) + half + 1):
            if math.gcd(r, s) != 1:
                continue
            m = Cusp(r, s)
            v = im_at_cusp(z, m)
            if v > best:
                best, where = v, [m]
            if FordDisc(m).contains(z):
                inside.append(m)
    if len(inside) > 1:
        raise AssertionError(f"{z} lies in several open Ford discs: {inside}")
    return (inside[0] if inside else None), best


# ---------------------------------------------------------------------------
# reduction


def reduce_to_siegel(z: HPoint) -> tuple[tuple, HPoint]:
    """Gauss reduction: returns ``(gamma, gamma z)`` with ``|x'| <= 1/2``, ``|z'| >= 1``."""
    g = IDENTITY
    for _ in range(10_000):
        n = nearest_integer(z.x)
        if n:
            t = ((1, -n), (0, 1))
            z, g = mobius(t, z), matmul(t, g)
        if z.norm2() < 1:
            S = ((0, -1), (1, 0))
            z, g = mobius(S, z), matmul(S, g)
        else:
            return g, z
    raise AssertionError("reduction did not terminate")  # pragma: no cover


def in_siegel_set(z: HPoint, t=SIEGEL_T0, omega=OMEGA0) -> bool:
    """``<alpha, H_B(z)> = -log y < log t`` and ``x`` in ``omega``."""
    t = PositiveReal.of(t)
    lo, hi = omega
    return lo <= z.x <= hi and -LogNumber.log(z.y) < t.log


# ---------------------------------------------------------------------------
# SVG rendering


def _visible_discs(window, s_max: int) -> list[Cusp]:
    x0, x1, y0, y1 = window
    out = []
    for s in range(1, s_max + 1):
        R = Fraction(1, 2 * s * s)
        for r in range(math.floor((x0 - R) * s) - 1, math.ceil((x1 + R) * s) + 2):
            if math.gcd(r, s) != 1:
                continue
            cx, cy = Fraction(r, s), R
            dx = max(x0 - cx, Fraction(0), cx - x1)
            dy = max(y0 - cy, Fraction(0), cy - y1)
            if dx * dx + dy * dy < R * R:
                out.append(Cusp(r, s))
    return out


def partition_svg(window: Iterable, resolution: int = 200, s_max: int = 3) -> str:
    """SVG drawing of the Ford-disc partition inside a window ``(x0, x1, y0, y1)``."""
    x0, x1, y0, y1 = (Fraction(v) for v in window)
    if not (x0 < x1 and 0 <= y0 < y1):
        raise EmptyWindow("window must satisfy x0 < x1 and 0 <= y0 < y1")
    if s_max < 1:
        raise ValueError("s_max must be at least 1")
    res = float(resolution)
    W, H = float(x1 - x0) * res, float(y1 - y0) * res
    px = lambda x: f"{float(x - x0) * res:.4f}"
    py = lambda y: f"{float(y1 - y) * res:.4f}"
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W:.4f}" height="{H:.4f}" '
        f'viewBox="0 0 {W:.4f} {H:.4f}">',
        f'<rect x="0" y="0" width="{W:.4f}" height="{H:.4f}" fill="white"/>',
    ]
    if y0 <= 1 <= y1:
        lines.append(
            f'<line class="cusp-inf" x1="0" y1="{py(1)}" x2="{W:.4f}" y2="{py(1)}" '
            'stroke="black" stroke-width="1"/>'
        )
    for m in _visible_discs((x0, x1, y0, y1), s_max):
        (cx, cy), R = FordDisc(m).center, FordDisc(m).radius
        lines.append(
            f'<circle class="cusp" data-cusp="{m}" cx="{px(cx)}" cy="{py(cy)}" '
            f'r="{float(R) * res:.4f}" fill="none" stroke="black" stroke-width="1"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
