"""Command-line front end.

Every leaf command prints one JSON document (or SVG for ``halfplane svg``).
Rationals travel as ``"p/q"`` strings.  Vectors are given as comma-separated
coordinates in the coroot basis ``a^v_1, ..., a^v_{l+1}, D``; the trailing D
coordinate may be omitted.  Any flag may also be supplied through ``--in``,
a JSON object keyed by flag name (without dashes).

Exit codes: 0 on success, 2 on malformed input, 1 on domain errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import corners, halfplane, loopu, orthofam, parabolic, stability, weyl
from .errors import DomainError, SchemaError
from .rationals import fmt, fmt_all, parse_rational
from .rootdata import CartanVector, Functional, RootDatum, classify_gcm, pair
from .sweep import SUITES, sweep


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message)


# ---------------------------------------------------------------------------
# input helpers


def _items(value) -> list:
    if value is None:
        return []
    if isinstance(value, (list, tuple)):
        return list(value)
    text = str(value).strip()
    if text.startswith("["):
        return _json(text)
    return [p for p in text.replace(" ", "").split(",") if p]


def _json(text):
    if not isinstance(text, str):
        return text
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from None


def _rationals(value) -> list[Fraction]:
    return [parse_rational(v) for v in _items(value)]


def _ints(value) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in _items(value))
    except (TypeError, ValueError):
        raise SchemaError(f"expected a list of integers, got {value!r}") from None


def _matrix(value):
    m = _json(value)
    if not isinstance(m, list) or not all(isinstance(r, list) for r in m):
        raise SchemaError("matrix must be an array of arrays of integers")
    if not all(isinstance(x, int) and not isinstance(x, bool) for r in m for x in r):
        raise SchemaError("matrix entries must be integers")
    return m


def _datum(args) -> RootDatum:
    if getattr(args, "matrix", None) is not None:
        return RootDatum(tuple(tuple(r) for r in _matrix(args.matrix)))
    return RootDatum.named(args.datum or "sl2")


def _vector(datum: RootDatum, value, name: str = "vector") -> CartanVector:
    c = _rationals(value)
    if len(c) == datum.size:
        c.append(Fraction(0))
    if len(c) != datum.size + 1:
        raise SchemaError(f"{name} needs {datum.size} or {datum.size + 1} coordinates")
    return CartanVector(datum, c)


def _functional(datum: RootDatum, value) -> Functional:
    c = _rationals(value)
    if len(c) != datum.size + 1:
        raise SchemaError(f"functional needs {datum.size + 1} coordinates")
    return Functional(datum, c)


def _require(args, *names):
    for n in names:
        if getattr(args, n, None) is None:
            raise SchemaError(f"--{n.replace('_', '-')} is required")


# ---------------------------------------------------------------------------
# handlers; each returns a JSON-ready object (or a str for SVG)


def h_gcm_classify(args):
    _require(args, "matrix")
    return classify_gcm(_matrix(args.matrix)).to_json()


def h_cartan_info(args):
    datum = _datum(args)
    lv, psi = datum.coweight_basis()
    return {
        "matrix": [list(r) for r in datum.matrix],
        "d": list(datum.d),
        "d_check": list(datum.d_check),
        "epsilon": fmt_all(datum.epsilon),
        "h_check": datum.h_check,
        "rho": datum.rho.to_json(),
        "rho_check": datum.rho_check.to_json(),
        "coweights": [v.to_json() for v in lv],
        "psi_check": psi.to_json(),
    }


def h_cartan_pair(args):
    _require(args, "H", "phi")
    datum = _datum(args)
    return {"value": fmt(pair(_vector(datum, args.H, "H"), _functional(datum, args.phi)))}


def h_cartan_tits(args):
    _require(args, "H")
    datum = _datum(args)
    H = _vector(datum, args.H, "H")
    return {"in_tits_cone": datum.tits_cone_contains(H), "delta_value": fmt(pair(H, datum.delta))}


def _word(args):
    return weyl.WeylWord(_datum(args), _ints(args.word))


def h_weyl_reduce(args):
    _require(args, "word")
    length, red = weyl.length_and_reduce(_word(args))
    return {"length": length, "reduced": red.to_json()}


def h_weyl_inversions(args):
    _require(args, "word")
    return {"inversions": [r.to_json() for r in weyl.inversion_set(_word(args))]}


def h_weyl_min_rep(args):
    _require(args, "word", "J")
    rep = weyl.min_coset_rep(_word(args), _ints(args.J))
    return {"representative": rep.to_json()}


def h_weyl_act(args):
    _require(args, "word", "H")
    w = _word(args)
    return {"image": w.act(_vector(w.datum, args.H, "H")).to_json()}


def h_parabolic_rho(args):
    _require(args, "J")
    return parabolic.rho_data(_datum(args), _ints(args.J)).to_json()


def h_parabolic_rho_pq(args):
    _require(args, "J", "K")
    datum = _datum(args)
    J, K = _ints(args.J), _ints(args.K)
    res = parabolic.rho_PQ_residuals(datum, J, K)
    return {
        "rho_PQ": parabolic.rho_PQ(datum, J, K).to_json(),
        "residuals": {k: fmt_all(v) for k, v in res.items()},
    }


def h_parabolic_raghunathan(args):
    _require(args, "node", "J")
    coeffs, mu = parabolic.raghunathan(_datum(args), args.node, _ints(args.J))
    return {"coeffs": {str(j): fmt(c) for j, c in coeffs.items()}, "mu": mu.to_json()}


def h_corners_split(args):
    _require(args, "H", "r", "J")
    datum = _datum(args)
    H = _vector(datum, args.H, "H")
    return corners.garland_split(H, parse_rational(args.r), _ints(args.J)).to_json()


def _parse_lim(entry):
    if not isinstance(entry, dict) or "lim" not in entry:
        raise SchemaError('limit entries look like {"lim": "p/q"} or {"lim": "-inf"}')
    v = entry["lim"]
    return corners.MINUS_INF if v == "-inf" else parse_rational(v)


def spec_from_json(datum: RootDatum, doc) -> corners.SequenceSpec:
    """``{"source": "interior" | [K...], "c": [{"lim": ...}, ...], "central": {"lim": ...}}``."""
    doc = _json(doc)
    if not isinstance(doc, dict) or "c" not in doc:
        raise SchemaError('sequence spec needs a "c" array')
    src = doc.get("source", "interior")
    if src == "interior":
        source, nodes = None, list(datum.indices)
    elif isinstance(src, list):
        source, nodes = tuple(int(k) for k in src), sorted(int(k) for k in src)
    else:
        raise SchemaError('"source" is "interior" or a list of nodes')
    lims = doc["c"]
    if not isinstance(lims, list) or len(lims) != len(nodes):
        raise SchemaError(f'"c" must have {len(nodes)} entries')
    central = corners.UNCONSTRAINED
    if doc.get("central") is not None:
        central = _parse_lim(doc["central"])
    return corners.SequenceSpec(datum, {i: _parse_lim(e) for i, e in zip(nodes, lims)}, source, central)


def h_corners_limit(args):
    _require(args, "spec")
    datum = _datum(args)
    return corners.limit_of(spec_from_json(datum, args.spec)).to_json()


def h_corners_strata(args):
    _require(args, "J")
    sigma = parse_rational(args.sigma or "1")
    cs = corners.torus_corner_strata(_datum(args), _ints(args.J), sigma)
    return {"J": list(cs.J), "sigma": fmt(sigma), "strata": cs.labels()}


def h_orthofam_orbit(args):
    _require(args, "T")
    datum = _datum(args)
    fam = orthofam.from_weyl_orbit(_vector(datum, args.T, "T"), int(args.L or 1))
    out = {"family": fam.to_json()}
    if len(fam.values) >= 2:
        out["verification"] = orthofam.verify_family(fam).to_json()
    return out


def h_orthofam_verify(args):
    _require(args, "family")
    datum = _datum(args)
    doc = _json(args.family)
    if not isinstance(doc, list):
        raise SchemaError("family is a list of {word, vector} objects")
    pairs = []
    for e in doc:
        if not isinstance(e, dict) or "word" not in e or "vector" not in e:
            raise SchemaError("family entries need 'word' and 'vector'")
        vec = e["vector"]["coords"] if isinstance(e["vector"], dict) else e["vector"]
        pairs.append((_ints(e["word"]), _vector(datum, vec)))
    return orthofam.verify_family(orthofam.OrthogonalFamily.from_pairs(datum, pairs)).to_json()


def _z(args):
    _require(args, "z")
    return halfplane.HPoint.parse(args.z)


def h_halfplane_deg_inst(args):
    return halfplane.deg_inst(_z(args)).to_json()


def h_halfplane_canonical_pair(args):
    return halfplane.canonical_pair(_z(args)).to_json()


def h_halfplane_iwasawa(args):
    iw = halfplane.iwasawa(_z(args))
    c, y = iw["rho_value"]
    return {
        "a_coord": fmt(iw["a_coord"]),
        "n_coord": fmt(iw["n_coord"]),
        "rho_value": {"coeff": fmt(c), "log_of": fmt(y)},
        "rho_value_approx": float(halfplane.hb_coefficient(_z(args))),
    }


def h_halfplane_reduce(args):
    g, z = halfplane.reduce_to_siegel(_z(args))
    return {"gamma": [list(r) for r in g], "z": z.to_json(), "in_siegel_set": halfplane.in_siegel_set(z)}


def h_halfplane_svg(args):
    _require(args, "window")
    window = _rationals(args.window)
    if len(window) != 4:
        raise SchemaError("window is x0,x1,y0,y1")
    return halfplane.partition_svg(window, int(args.resolution or 200), int(args.smax or 3))


def _series(args, name, default):
    N = int(args.order or loopu.DEFAULT_ORDER)
    value = getattr(args, name)
    return loopu.TruncatedSeries.of(_rationals(value) if value is not None else default, N)


def _imcoords(args):
    return loopu.IMCoords(_series(args, "sigma", [0]), _series(args, "mu", [1]), _series(args, "tau", [0]))


def h_loopu_reduce(args):
    return loopu.u_reduce(_imcoords(args)).to_json()


def h_loopu_matrix(args):
    M = loopu.to_matrix(_imcoords(args))
    return {"matrix": [[e.to_json() for e in row] for row in M]}


def h_loopu_scale(args):
    _require(args, "s")
    kind = args.kind or loopu.LOOP_ROTATION
    return loopu.scale(_imcoords(args), parse_rational(args.s), kind).to_json()


def _horo(args):
    _require(args, "J", "a")
    datum = _datum(args)
    J = _ints(args.J)
    levi = halfplane.HPoint.parse(args.levi) if args.levi else None
    a = corners.TorusPoint.exp(_vector(datum, args.a, "a"))
    return stability.HorosphericalPoint(J, levi, a)


def h_stability_check_canonical(args):
    p = _horo(args)
    return {"J": list(p.J), "canonical": stability.check_canonical(p.J, p)}


def h_stability_cell(args):
    if args.stratum is not None:
        _require(args, "J", "y")
        datum = _datum(args)
        a = corners.TorusStratumPoint.from_multiplicative(datum, _ints(args.stratum), _rationals(args.y))
        levi = halfplane.HPoint.parse(args.levi) if args.levi else None
        p = stability.BoundaryPoint(tuple(sorted(_ints(args.J))), levi, a)
    else:
        p = _horo(args)
    return stability.pbord_cell(p).to_json()


def h_stability_family(args):
    _require(args, "n", "r")
    return stability.semistable_family(int(args.n), parse_rational(args.r), _datum(args)).to_json()


def h_stability_threshold(args):
    _require(args, "C", "log_bound")
    M = stability.rho_threshold(parse_rational(args.C), parse_rational(args.log_bound), _datum(args))
    return {"M": fmt(M)}


def h_sweep(args):
    _require(args, "suite")
    return sweep(args.suite, int(args.n or 100), int(args.seed or 0))


# ---------------------------------------------------------------------------
# parser


COMMON = {
    "datum": dict(help="named datum: sl2, sl3, sl4, g2 (default sl2)"),
    "matrix": dict(help="GCM as a JSON array of arrays"),
}

COMMANDS = {
    "gcm": {"classify": (h_gcm_classify, [])},
    "cartan": {
        "info": (h_cartan_info, []),
        "pair": (h_cartan_pair, ["H", "phi"]),
        "tits": (h_cartan_tits, ["H"]),
    },
    "weyl": {
        "reduce": (h_weyl_reduce, ["word"]),
        "inversions": (h_weyl_inversions, ["word"]),
        "min-rep": (h_weyl_min_rep, ["word", "J"]),
        "act": (h_weyl_act, ["word", "H"]),
    },
    "parabolic": {
        "rho": (h_parabolic_rho, ["J"]),
        "rho-pq": (h_parabolic_rho_pq, ["J", "K"]),
        "raghunathan": (h_parabolic_raghunathan, ["node:int", "J"]),
    },
    "corners": {
        "split": (h_corners_split, ["H", "r", "J"]),
        "limit": (h_corners_limit, ["spec"]),
        "strata": (h_corners_strata, ["J", "sigma"]),
    },
    "orthofam": {
        "orbit": (h_orthofam_orbit, ["T", "L"]),
        "verify": (h_orthofam_verify, ["family"]),
    },
    "halfplane": {
        "deg-inst": (h_halfplane_deg_inst, ["z"]),
        "canonical-pair": (h_halfplane_canonical_pair, ["z"]),
        "iwasawa": (h_halfplane_iwasawa, ["z"]),
        "reduce": (h_halfplane_reduce, ["z"]),
        "svg": (h_halfplane_svg, ["window", "resolution", "smax"]),
    },
    "loopu": {
        "reduce": (h_loopu_reduce, ["sigma", "mu", "tau"]),
        "matrix": (h_loopu_matrix, ["sigma", "mu", "tau"]),
        "scale": (h_loopu_scale, ["sigma", "mu", "tau", "s", "kind"]),
    },
    "stability": {
        "check-canonical": (h_stability_check_canonical, ["J", "levi", "a"]),
        "cell": (h_stability_cell, ["J", "levi", "a", "stratum", "y"]),
        "family": (h_stability_family, ["n", "r"]),
        "threshold": (h_stability_threshold, ["C", "log-bound"]),
    },
}


def _io_flags(p: argparse.ArgumentParser):
    p.add_argument("--in", dest="in_path", help="JSON object supplying any of the flags")
    p.add_argument("--out", help="write output here instead of stdout")
    p.add_argument("--format", choices=["json", "svg"], default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--order", type=int, default=None, help="truncation order N for loop series")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="loopbord", description="Exact computations for loop-group bordifications.")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)
    for group, leaves in COMMANDS.items():
        gp = top.add_parser(group)
        sub = gp.add_subparsers(dest="command", required=True, parser_class=_Parser)
        for name, (handler, flags) in leaves.items():
            lp = sub.add_parser(name)
            for opt, kw in COMMON.items():
                lp.add_argument(f"--{opt}", **kw)
            for flag in flags:
                flag, _, kind = flag.partition(":")
                if flag in COMMON:
                    continue
                lp.add_argument(f"--{flag}", type=int if kind == "int" else str, default=None)
            _io_flags(lp)
            lp.set_defaults(handler=handler)
    sp = top.add_parser("sweep")
    sp.add_argument("--suite", choices=None, help=f"one of {', '.join(SUITES)}")
    sp.add_argument("--n", type=int, default=None)
    _io_flags(sp)
    sp.set_defaults(handler=h_sweep)
    return parser


def _merge_input(args):
    if not args.in_path:
        return
    try:
        with open(args.in_path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read --in document: {exc}") from None
    if not isinstance(doc, dict):
        raise SchemaError("--in document must be a JSON object")
    for key, value in doc.items():
        dest = key.replace("-", "_")
        if not hasattr(args, dest):
            raise SchemaError(f"unknown field {key!r} in --in document")
        if getattr(args, dest) is None:
            setattr(args, dest, value)


def _render(result) -> str:
    if isinstance(result, str):
        return result
    return json.dumps(result, separators=(",", ":")) + "\n"


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        _merge_input(args)
        result = args.handler(args)
        if args.format == "svg" and not isinstance(result, str):
            raise SchemaError("this command does not produce SVG")
        text = _render(result)
        if args.out:
            with open(args.out, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            stdout.write(text)
        return 0
    except SchemaError as exc:
        stderr.write(f"error: {exc}\n")
        return 2
    except DomainError as exc:
        stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        stderr.write(f"error: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
