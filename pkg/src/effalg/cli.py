"""Command-line front end: validate, analyze and resolve instance files.

Instance documents are JSON with a "kind" key (boolean, mv_product,
matrix, product, horizontal_sum, mo2, table).  Exit codes: 0 pass/yes,
1 violation/no, 2 parse or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

import numpy as np

from . import compbase, comparability, core, groups, instances, spectral
from .core import GridAlgebra
from .errors import EffalgError
from .matrices import MatrixEffectAlgebra


def _frac_str(f) -> str:
    f = Fraction(f)
    return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"


def proj_repr(E, p):
    """Zero-one vector for grids, bitmask for booleans, matrix otherwise."""
    if isinstance(E, MatrixEffectAlgebra):
        return [[round(float(x), 12) for x in row] for row in np.asarray(p)]
    if isinstance(E, core.BooleanAlgebra):
        return int(p)
    if isinstance(E, GridAlgebra):
        return "".join("1" if c > 0 else "0" for c in E.coords[p])
    return E.label(p)


def _load_instance(path: str):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SystemExit(_fail(f"cannot read instance document: {exc}", 2))
    try:
        return instances.parse_document(doc)
    except (EffalgError, KeyError, ValueError, TypeError) as exc:
        raise SystemExit(_fail(f"bad instance document: {exc}", 2))


def _fail(message: str, code: int) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _emit(payload: dict, text: str, fmt: str):
    if fmt == "json":
        print(json.dumps(payload, indent=2, default=str))
    else:
        print(text)


def _default_depth(E, requested):
    if requested is not None:
        return requested
    return 8 if isinstance(E, MatrixEffectAlgebra) else 16


# ---------------------------------------------------------------------------
# subcommands


def cmd_validate(args) -> int:
    E, cb = _load_instance(args.file)
    ax = core.validate_axioms(E, seed=args.seed)
    reports = [ax]
    if E.enumerable:
        reports.append(compbase.validate_base(E, cb, seed=args.seed))
    ok = all(r.passed for r in reports)
    _emit({"passed": ok, "reports": [r.to_dict() for r in reports]},
          "\n".join(r.summary() for r in reports), args.format)
    return 0 if ok else 1


def cmd_analyze(args) -> int:
    E, cb = _load_instance(args.file)
    if not E.enumerable:
        verdict = cb.is_spectral()
        text = (f"kind: {E.kind} dim {E.dim}\n"
                f"carrier: not enumerable\nspectral: {'yes' if verdict else 'no'}")
        _emit({"kind": E.kind, "spectral": verdict}, text, args.format)
        return 0
    sharp = core.sharp_elements(E)
    centre = compbase.central_base(E)
    blocks = compbase.blocks(cb)
    cblocks = [compbase.c_block(cb, b) for b in blocks]
    bc = comparability.check_b_comparability(cb, seed=args.seed)
    pcp = cb.has_pcp()
    spectralp = bc.passed and pcp
    detail = ""
    if not spectralp:
        fails = [c.name for c in bc.checks if not c.passed]
        if not pcp:
            fails.append("projection-cover")
        detail = f" (fails: {', '.join(fails)})"
    text = "\n".join([
        f"kind: {E.kind}",
        f"|E|: {E.size}",
        f"sharp elements: {len(sharp)}",
        f"center: {len(centre.projections)}",
        f"|P|: {len(cb.projections)}",
        f"blocks: {len(blocks)}",
        f"C-block sizes: {[len(c) for c in cblocks]}",
        f"spectral: {'yes' if spectralp else 'no'}{detail}",
    ])
    payload = {"kind": E.kind, "size": E.size, "sharp": len(sharp),
               "center": len(centre.projections), "projections": len(cb.projections),
               "blocks": len(blocks), "c_block_sizes": [len(c) for c in cblocks],
               "spectral": spectralp,
               "b_comparability": bc.to_dict(), "projection_cover": pcp}
    _emit(payload, text, args.format)
    return 0


def cmd_spectral(args) -> int:
    E, cb = _load_instance(args.file)
    if args.element is None:
        raise SystemExit(_fail("--element is required", 2))
    try:
        a = instances.parse_element(E, _maybe_json(args.element))
    except EffalgError as exc:
        raise SystemExit(_fail(str(exc), 2))
    depth = _default_depth(E, args.depth)
    try:
        if getattr(args, "lam", None):
            lam = Fraction(args.lam)
            val = spectral.rational_resolution(cb, a, lam, depth, details=True)
            text = (f"p[{_frac_str(lam)}] = {proj_repr(E, val.projection)} "
                    f"(stable from depth {val.stable_from})")
            _emit({"lambda": _frac_str(lam), "projection": proj_repr(E, val.projection),
                   "stable_from": val.stable_from, "depth": depth}, text, args.format)
            return 0
        res = spectral.binary_resolution(cb, a, depth)
    except EffalgError as exc:
        raise SystemExit(_fail(str(exc), 2))
    rows = []
    for lam in res.grid():
        d = spectral.DyadicRational.from_fraction(lam)
        rows.append((d.level, d.num, lam, res.entries[lam]))
    if args.format == "csv":
        print("level,k,lambda,projection")
        for level, k, lam, p in rows:
            print(f"{level},{k},{_frac_str(lam)},{proj_repr(E, p)}")
    elif args.format == "json":
        print(json.dumps({"element": E.label(a), "depth": depth,
                          "entries": [{"level": lv, "k": k, "lambda": _frac_str(lam),
                                       "projection": proj_repr(E, p)}
                                      for lv, k, lam, p in rows]}, default=str))
    else:
        print(f"binary resolution of {E.label(a)} to depth {depth}")
        for level, k, lam, p in rows:
            print(f"  p[{_frac_str(lam):>8}] = {proj_repr(E, p)}")
    return 0


def cmd_check_spectral(args) -> int:
    E, cb = _load_instance(args.file)
    verdict = cb.is_spectral()
    print("spectral: yes" if verdict else "spectral: no")
    return 0 if verdict else 1


def cmd_group(args) -> int:
    E, cb = _load_instance(args.file)
    try:
        G = instances.universal_group(E)
    except EffalgError as exc:
        raise SystemExit(_fail(str(exc), 2))
    if not args.g:
        raise SystemExit(_fail("--g VECTOR is required", 2))
    g = np.array([int(x) for x in args.g.split(",")])
    if g.shape != (G.dim,):
        raise SystemExit(_fail(f"need {G.dim} coordinates", 2))
    if args.approx:
        lo, hi, step = (int(x) for x in args.approx.split(":"))
        try:
            pieces, err, gap = groups.dyadic_approximation(
                G, g, range(lo, hi + 1, step), args.scale)
        except EffalgError as exc:
            raise SystemExit(_fail(str(exc), 2))
        text = "\n".join([f"u_{i + 1} = {list(map(int, u))}" for i, u in enumerate(pieces)]
                         + [f"error = {_frac_str(err)} <= {_frac_str(gap)}"])
        _emit({"pieces": [list(map(int, u)) for u in pieces],
               "error": _frac_str(err), "bound": _frac_str(gap)}, text, args.format)
        return 0
    lam = Fraction(args.lam) if args.lam else Fraction(1, 2)
    p = groups.group_spectral(G, g, lam.numerator, lam.denominator)
    text = f"p[{_frac_str(lam)}] = {list(map(int, p))}"
    _emit({"lambda": _frac_str(lam), "projection": list(map(int, p))}, text, args.format)
    return 0


def cmd_expect(args) -> int:
    E, cb = _load_instance(args.file)
    try:
        a = instances.parse_element(E, _maybe_json(args.element))
    except EffalgError as exc:
        raise SystemExit(_fail(str(exc), 2))
    depth = _default_depth(E, args.depth)
    if not isinstance(E, GridAlgebra):
        raise SystemExit(_fail("--state weights need a grid instance", 2))
    weights = [Fraction(t) for t in args.state.split(",")]
    try:
        s = instances.weighted_state(E, weights)
        lo, hi = spectral.expectation_bounds(cb, a, s, depth)
    except (EffalgError, ValueError) as exc:
        raise SystemExit(_fail(str(exc), 2))
    text = f"{_frac_str(lo)} <= s(a) <= {_frac_str(hi)}   (s(a) = {_frac_str(s(a))})"
    _emit({"lo": _frac_str(lo), "hi": _frac_str(hi), "value": _frac_str(s(a)),
           "depth": depth}, text, args.format)
    return 0


def _maybe_json(text):
    text = text.strip()
    if text.startswith("{"):
        return json.loads(text)
    return text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="effalg",
        description="validate and spectrally resolve finite effect-algebra instances")
    p.add_argument("--format", choices=("table", "csv", "json"), default="table")
    p.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub = p.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("validate", help="axiom and base suites")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_validate)

    sp = sub.add_parser("analyze", help="structure summary and spectrality verdict")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_analyze)

    sp = sub.add_parser("spectral", help="binary/rational resolution of an element")
    sp.add_argument("file")
    sp.add_argument("--element", required=True)
    sp.add_argument("--depth", type=int, default=None)
    sp.add_argument("--lambda", dest="lam", default=None, help="rational m/n")
    sp.set_defaults(fn=cmd_spectral)

    sp = sub.add_parser("check-spectral", help="exit 0 when spectral, 1 when not")
    sp.add_argument("file")
    sp.set_defaults(fn=cmd_check_spectral)

    sp = sub.add_parser("group", help="integer-group oracle on grid instances")
    sp.add_argument("file")
    sp.add_argument("--g", required=True, help="integer coordinates, comma separated")
    sp.add_argument("--lambda", dest="lam", default=None, help="rational m/n")
    sp.add_argument("--approx", default=None, help="grid lo:hi:step")
    sp.add_argument("--scale", type=int, default=1)
    sp.set_defaults(fn=cmd_group)

    sp = sub.add_parser("expect", help="state bounds from the resolution")
    sp.add_argument("file")
    sp.add_argument("--element", required=True)
    sp.add_argument("--state", required=True, help="rational weights, comma separated")
    sp.add_argument("--depth", type=int, default=None)
    sp.set_defaults(fn=cmd_expect)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except EffalgError as exc:
        return _fail(str(exc), 2)


if __name__ == "__main__":
    sys.exit(main())
