"""Command-line interface: ``tak compute | solve | verify | alexander | sample``.

Exit codes: 0 success/verified, 1 mathematical failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import re
import sys

import numpy as np

from .knots import KnotParameterError, classical_alexander, parse_knot_spec
from .laurent import ZERO_TOL, _fmt
from .representations import (
    ReducibleRepresentationError, build_from_xy, build_from_xz, coordinate_roots, relator_residual,
    sample_representation, snap_x,
)
from .solver import Family, Mode, census, solve, theorem_count
from .twisted_alexander import MONIC_TOL, NotARepresentationError, _pair, twisted_alexander

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_COMPLEX_RE = re.compile(
    r"""^\s*(?:
        (?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
        (?:(?P<im>[+-](?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i)?
      | (?P<pure>[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?)i
    )\s*$""",
    re.X,
)


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Parse ``a``, ``a+bi``, ``a-bi`` or ``bi``."""
    m = _COMPLEX_RE.match(text)
    if not m:
        raise UsageError(f"cannot parse complex number {text!r} (use a, a+bi, a-bi or bi)")

    def imag(s):
        return float(s + "1") if s in ("", "+", "-") else float(s)

    if m.group("pure") is not None:
        return complex(0, imag(m.group("pure")))
    im = m.group("im")
    return complex(float(m.group("re")), imag(im) if im is not None else 0.0)


def parse_n_range(text: str) -> list[int]:
    m = re.fullmatch(r"\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*", text)
    if not m:
        raise UsageError(f"bad n range {text!r}; use N or A..B")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise UsageError(f"empty n range {text!r}")
    return list(range(lo, hi + 1))


def _families(name: str) -> list[Family]:
    return list(Family) if name == "all" else [Family(name)]


def _modes(name):
    return [Mode.DEFICIENT, Mode.MONIC] if name is None else [Mode(name)]


def _c(z: complex) -> str:
    re_, im = _pair(z)
    if im == 0:
        return f"{re_:.12g}"
    if re_ == 0:
        return f"{im:.12g}i"
    return f"{re_:.12g}{im:+.12g}i"


def _emit(text: str, args) -> None:
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_compute(args) -> int:
    pres = parse_knot_spec(args.knot)
    x = parse_complex(args.x)
    if args.z is not None and args.y is not None:
        raise UsageError("give at most one of --z or --y")
    solved = args.z is None and args.y is None
    if solved:
        kind, coords = coordinate_roots(pres, x)
        if not coords:
            print(f"error: no nonabelian representation of {pres.name} with x = {x}", file=sys.stderr)
            return EXIT_FAIL
        coord = coords[0]
    else:
        kind, coord = ("z", parse_complex(args.z)) if args.z is not None else ("y", parse_complex(args.y))
    build = build_from_xz if kind == "z" else build_from_xy
    snapped = x
    try:
        if args.snap > 0:
            try:
                snapped = snap_x(pres, x, coord, kind, args.snap)
            except ValueError:
                snapped = x
        rep = build(snapped, coord)
        report = twisted_alexander(pres, rep, args.tolerance, args.monic_tolerance)
    except ReducibleRepresentationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except NotARepresentationError as exc:
        res = relator_residual(build(x, coord), pres.word)
        print(f"error: {exc}; relator residual at the given point = {res:.6g}", file=sys.stderr)
        return EXIT_FAIL
    out = report.to_json()
    if snapped != x:
        out["snapped_from_x"] = _pair(x)
    if solved:
        out["coordinate_solved"] = True
    if args.format == "text":
        _emit(f"{pres.name} x={_c(snapped)} {kind}={_c(coord)}\n"
              f"delta = {' + '.join(f'({_c(c)})t^{k}' for k, c in sorted(report.delta.coeffs.items()))}\n"
              f"span = {report.span} leading = {_c(report.leading)} "
              f"monic = {report.monic} deficient = {report.deficient}\n", args)
    else:
        _emit(_dumps(out), args)
    return EXIT_OK


def cmd_solve(args) -> int:
    fam, mode = Family(args.family), Mode(args.mode)
    if args.n is None:
        raise UsageError("--n is required")
    n = int(args.n)
    if n < (1 if fam is Family.B3 else 2):
        raise UsageError(f"n = {n} is out of range for {fam.value}")
    ws = solve(fam, n, mode, args.tolerance, args.monic_tolerance)
    if args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["family", "n", "mode", "x_re", "x_im", "coord", "c_re", "c_im", "span", "leading_re",
                     "leading_im", "verified"])
        for w in ws:
            span = w.delta.span if w.delta else ""
            lead = w.delta.leading if w.delta else complex("nan")
            wr.writerow([fam.value, n, mode.value, *_pair(w.x), w.coord_name, *_pair(w.coord), span,
                         *_pair(lead), w.verified])
        _emit(buf.getvalue(), args)
    elif args.format == "text":
        lines = [f"{fam.value} n={n} {mode.value}: {len(ws)} witnesses (theorem: {theorem_count(fam, n, mode)})"]
        for w in ws:
            lines.append(f"  x={_c(w.x)} {w.coord_name}={_c(w.coord)} "
                         f"span={w.delta.span if w.delta else '?'} verified={w.verified}")
        _emit("\n".join(lines) + "\n", args)
    else:
        _emit(_dumps([w.to_json() for w in ws]), args)
    return EXIT_OK if all(w.verified for w in ws) else EXIT_FAIL


def cmd_verify(args) -> int:
    if args.n is not None and args.n_range is not None:
        raise UsageError("give --n or --n-range, not both")
    ns = parse_n_range(args.n or args.n_range or "2..8")
    results = census(_families(args.family), ns, _modes(args.mode),
                     tol=args.tolerance, monic_tol=args.monic_tolerance)
    if args.format == "json":
        _emit(_dumps([r.to_json() for r in results]), args)
    elif args.format == "csv":
        buf = io.StringIO()
        wr = csv.writer(buf, lineterminator="\n")
        wr.writerow(["family", "n", "mode", "found", "theorem", "verified"])
        for r in results:
            wr.writerow([r.family.value, r.n, r.mode.value, r.found_count, r.theorem_count,
                         str(r.all_verified and not r.parabolic_plus).lower()])
        _emit(buf.getvalue(), args)
    else:
        lines = [f"{'family':<11} {'n':>3} {'mode':<10} {'found':>5} {'theorem':>7}  status"]
        for r in results:
            status = "ok" if r.ok else ("COUNT MISMATCH" if not r.matches else "UNVERIFIED")
            extra = f"  (x=-2 witnesses: {len(r.parabolic_minus)})" if r.parabolic_minus else ""
            lines.append(f"{r.family.value:<11} {r.n:>3} {r.mode.value:<10} {r.found_count:>5} "
                         f"{r.theorem_count:>7}  {status}{extra}")
        _emit("\n".join(lines) + "\n", args)
    return EXIT_OK if all(r.ok for r in results) else EXIT_FAIL


def cmd_alexander(args) -> int:
    pres = parse_knot_spec(args.knot)
    poly = classical_alexander(pres)
    out = {
        "knot": pres.name,
        "coeffs": list(poly.coeffs),
        "leading": poly.leading,
        "genus": pres.genus,
        "fibered": pres.fibered,
    }
    if args.format == "text":
        verdict = {True: "fibered", False: "non-fibered", None: "unknown"}[pres.fibered]
        _emit(f"{pres.name}: {str(poly).replace('z', 't')}  leading {poly.leading}  {verdict}\n", args)
    else:
        _emit(_dumps(out), args)
    return EXIT_OK


def cmd_sample(args) -> int:
    pres = parse_knot_spec(args.knot)
    rng = np.random.default_rng(args.seed)
    reports = [twisted_alexander(pres, sample_representation(pres, rng), args.tolerance, args.monic_tolerance)
               for _ in range(args.count)]
    _emit(_dumps([r.to_json() for r in reports]), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tolerance", type=float, default=ZERO_TOL,
                        help="relative zero threshold for Laurent coefficients (default %(default)g)")
    common.add_argument("--monic-tolerance", type=float, default=MONIC_TOL,
                        help="|leading - 1| threshold for monicity (default %(default)g)")
    common.add_argument("--format", choices=["json", "csv", "text"], default="json")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="tak", description="Twisted Alexander polynomials of 2-bridge and twist knots.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="Delta for one representation")
    c.add_argument("--knot", required=True, help="b:p,m or twist:m")
    c.add_argument("--x", required=True, help="tr rho(a)")
    c.add_argument("--z", help="tr rho(ab)")
    c.add_argument("--y", help="tr rho(ab^-1)")
    # with neither --z nor --y, the first root of the Riley equation at this x is used
    c.add_argument("--snap", type=float, default=1e-3,
                   help="max relative Newton correction of x onto the Riley curve; 0 disables")
    c.set_defaults(func=cmd_compute)

    s = sub.add_parser("solve", parents=[common], help="exceptional representations for one n")
    s.add_argument("--family", required=True, choices=[f.value for f in Family])
    s.add_argument("--n", required=True)
    s.add_argument("--mode", required=True, choices=[m.value for m in Mode])
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", parents=[common], help="compare counts with the closed formulas")
    v.add_argument("--family", default="all", choices=["all"] + [f.value for f in Family])
    v.add_argument("--n", help="N or A..B")
    v.add_argument("--n-range", help="A..B")
    v.add_argument("--mode", choices=[m.value for m in Mode])
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("alexander", parents=[common], help="classical Alexander polynomial")
    a.add_argument("--knot", required=True)
    a.set_defaults(func=cmd_alexander)

    r = sub.add_parser("sample", parents=[common], help="Delta at random nonabelian representations")
    r.add_argument("--knot", required=True)
    r.add_argument("--count", type=int, default=5)
    r.add_argument("--seed", type=int, default=0)
    r.set_defaults(func=cmd_sample)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.tolerance <= 0 or args.monic_tolerance <= 0:
        print("error: tolerances must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, KnotParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
