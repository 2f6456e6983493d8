"""Command-line front door: render planes, run certificate suites, print
landmarks, and scan boundedness loci.

Exit codes: 0 success / all checks passed, 1 certificate failure,
2 inconclusive, 64 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys
from itertools import product

from .certify import (certify_escape_bounds, certify_polynomial_like,
                      certify_symmetries, certify_winding)
from .core import EscapeSettings, MapParams, RENDER_MAX_ITER
from .landmarks import baby_center, overlap_parameter, scan_boundedness_locus, scan_to_csv
from .regions import STANDARD, TIGHT, make_window, sample_boundary
from .render import (APlane, CPlane, DynamicalPlane, GREEN, PURPLE, RenderSpec,
                     render, write_ppm)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64

SUITES = ("escape", "main-theorem-a", "main-theorem-b1", "main-theorem-b2",
          "symmetries", "all")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _complex(text: str) -> complex:
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise UsageError(f"expected re or re,im, got {text!r}")


def _rgb(text: str) -> tuple[int, int, int]:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"expected r,g,b, got {text!r}")
    vals = tuple(int(p) for p in parts)
    if not all(0 <= v <= 255 for v in vals):
        raise UsageError("color channels must lie in [0, 255]")
    return vals


def _n_values(text: str) -> list[int]:
    if ".." in text:
        lo, hi = text.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(text)]


def _radius(text: str) -> float | None:
    if text == "auto":
        return None
    return float(text)


def _add_render_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--re", type=float, required=True, help="viewport left edge")
    p.add_argument("--re2", type=float, required=True, help="viewport right edge")
    p.add_argument("--im", type=float, required=True, help="viewport bottom edge")
    p.add_argument("--im2", type=float, required=True, help="viewport top edge")
    p.add_argument("--w", type=int, required=True, help="image width in pixels")
    p.add_argument("--h", type=int, required=True, help="image height in pixels")
    p.add_argument("--max-iter", type=int, default=RENDER_MAX_ITER)
    p.add_argument("--escape-radius", type=_radius, default=None,
                   help="escape radius, or 'auto' (default) for the certified one")
    p.add_argument("--threads", type=int, default=None,
                   help="worker count (output bytes do not depend on it)")
    p.add_argument("--color-plus", type=_rgb, default=GREEN)
    p.add_argument("--color-minus", type=_rgb, default=PURPLE)
    p.add_argument("--format", default="ppm", choices=["ppm"])
    p.add_argument("--out", required=True)


def build_parser() -> _Parser:
    top = _Parser(prog="mcmullen",
                  description="Render and certify planes of z**n + a/z**n + c")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render-julia", parents=[], help="dynamical plane")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_complex, required=True)
    p.add_argument("--c", type=_complex, default=0j)
    _add_render_flags(p)
    p.set_defaults(func=_cmd_render_julia)

    p = sub.add_parser("render-aplane", help="a-parameter plane at fixed c")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--c", type=_complex, required=True)
    _add_render_flags(p)
    p.set_defaults(func=_cmd_render_aplane)

    p = sub.add_parser("render-cplane", help="c-parameter plane at fixed a")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=_complex, required=True)
    _add_render_flags(p)
    p.set_defaults(func=_cmd_render_cplane)

    p = sub.add_parser("verify", help="run a certificate suite")
    p.add_argument("--suite", required=True, choices=SUITES)
    p.add_argument("--n", type=_n_values, default=None,
                   help="degree or range, e.g. 3..7")
    p.add_argument("--samples", type=int, default=2000,
                   help="shell samples for escape certificates")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("centers", help="print closed-form component centers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, default=None,
                   help="evaluate centers at this a too")
    p.set_defaults(func=_cmd_centers)

    p = sub.add_parser("scan", help="boundedness-locus scan over a window")
    p.add_argument("--window", required=True, choices=["aplane", "cplane", "tight"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--a", type=float, default=None)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--density", type=int, default=64)
    p.add_argument("--max-iter", type=int, default=1024)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_scan)

    return top


def _render_common(args, plane) -> int:
    spec = RenderSpec(
        plane=plane,
        viewport=(args.re, args.re2, args.im, args.im2),
        width=args.w, height=args.h,
        settings=EscapeSettings(escape_radius=args.escape_radius,
                                max_iter=args.max_iter),
        color_plus=args.color_plus, color_minus=args.color_minus,
    )
    write_ppm(render(spec, threads=args.threads), args.out)
    print(f"wrote {args.out} ({args.w}x{args.h})")
    return EXIT_OK


def _cmd_render_julia(args) -> int:
    return _render_common(args, DynamicalPlane(MapParams(args.n, args.a, args.c)))


def _cmd_render_aplane(args) -> int:
    return _render_common(args, APlane(args.n, args.c))


def _cmd_render_cplane(args) -> int:
    return _render_common(args, CPlane(args.n, args.a))


def _boundary_params(window, count: int):
    pts = sample_boundary(window, max(count * 4, 8))
    return pts[:: max(len(pts) // count, 1)][:count]


def _suite_escape(n_values, samples):
    reports = []
    for c in (-1.0, -0.5, 0.0):
        lo, hi = c * c / 4.0, (1.0 - c / 2.0) ** 2
        for t in (0.25, 0.5, 0.75):
            a = lo + (hi - lo) * t
            reports.append(certify_escape_bounds(
                MapParams(3, a, c), EscapeSettings(escape_radius=2.0), samples))
    for a in (1.0, 2.5, 4.0):
        for v in (0.8, 1.2, 1.9):
            c = v - 2.0 * a ** 0.5
            reports.append(certify_escape_bounds(
                MapParams(5, a, c), EscapeSettings(escape_radius=2.0), samples))
    for a in (0.1, 0.55, 1.0):
        for v in (0.85, 1.0, 1.2):
            c = v - 2.0 * a ** 0.5
            reports.append(certify_escape_bounds(
                MapParams(11, a, c), EscapeSettings(escape_radius=1.25), samples))
    return reports


def _suite_main_a(n_values, samples):
    reports = []
    ns = [n for n in (n_values or [3, 4, 5, 6, 7]) if n >= 3]
    for n, c in product(ns, (-1.0, -0.5, -0.25)):
        window = make_window(n, c=c)
        for a in _boundary_params(window, 4):
            reports.append(certify_polynomial_like(MapParams(n, complex(a), c),
                                                   m=1024, targets=16))
        reports.append(certify_winding(window))
    return reports


def _sector_center_param(n: int, a: float, k: int) -> complex:
    """c placing v_plus on the critical point centered in sector k."""
    r = math.pow(a, 1.0 / (2 * n))
    ang = 2.0 * math.pi * k / n
    return complex(r * math.cos(ang), r * math.sin(ang)) - 2.0 * math.sqrt(a)


def _suite_main_b1(n_values, samples):
    reports = []
    ns = [n for n in (n_values or [5, 6, 7]) if n >= 5]
    for n in ns:
        for a, k in product((1.0, 4.0), (0, n - 1)):
            c = _sector_center_param(n, a, k)
            reports.append(certify_polynomial_like(MapParams(n, a, c), k=k,
                                                   m=1024, targets=16))
        reports.append(certify_winding(make_window(n, a=1.0, k=0)))
    return reports


def _suite_main_b2(n_values, samples):
    reports = []
    ns = [n for n in (n_values or [11, 13]) if n >= 11]
    for n in ns:
        for a in (0.1, 0.5, 1.0):
            c = baby_center(n, a, "plus")
            reports.append(certify_polynomial_like(MapParams(n, a, c),
                                                   regime=TIGHT, m=1024, targets=16))
        reports.append(certify_winding(make_window(n, a=0.22, tight=True)))
    return reports


def _suite_symmetries(n_values, samples):
    reports = []
    for n in (n_values or [3, 4, 5]):
        reports.append(certify_symmetries(MapParams(n, 0.5, complex(0.3, 0.1))))
        reports.append(certify_symmetries(MapParams(n, complex(0.2, 0.3), 0.25)))
    return reports


def _cmd_verify(args) -> int:
    suite_fns = {
        "escape": [_suite_escape],
        "main-theorem-a": [_suite_main_a],
        "main-theorem-b1": [_suite_main_b1],
        "main-theorem-b2": [_suite_main_b2],
        "symmetries": [_suite_symmetries],
        "all": [_suite_escape, _suite_main_a, _suite_main_b1, _suite_main_b2,
                _suite_symmetries],
    }
    reports = []
    for fn in suite_fns[args.suite]:
        reports.extend(fn(args.n, args.samples))
    failed = inconclusive = 0
    for r in reports:
        print(r.to_line())
        if r.inconclusive:
            inconclusive += 1
        elif not r.passed:
            failed += 1
    print(f"suite={args.suite} checks={len(reports)} failed={failed} "
          f"inconclusive={inconclusive}")
    if failed:
        return EXIT_FAIL
    if inconclusive:
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def _cmd_centers(args) -> int:
    n = args.n
    a_star = overlap_parameter(n)
    print(f"n = {n}")
    print(f"overlap a = {a_star:.12g}")
    cp = baby_center(n, a_star, "plus")
    cm = baby_center(n, a_star, "minus")
    print(f"c_plus(overlap a) = {cp.real:.12g}  |c_plus| = {abs(cp):.3g}")
    print(f"c_minus(overlap a) = {cm.real:.12g}")
    if args.a is not None:
        cp = baby_center(n, args.a, "plus")
        cm = baby_center(n, args.a, "minus")
        print(f"c_plus(a={args.a:g}) = {cp.real:.12g}  |c_plus| = {abs(cp):.3g}")
        print(f"c_minus(a={args.a:g}) = {cm.real:.12g}")
    return EXIT_OK


def _cmd_scan(args) -> int:
    if args.window == "aplane":
        if args.c is None:
            raise UsageError("aplane scans require --c (real, -1 <= c <= 0)")
        window = make_window(args.n, c=args.c)
    elif args.window == "cplane":
        if args.a is None:
            raise UsageError("cplane scans require --a (real, 1 <= a <= 4)")
        window = make_window(args.n, a=args.a, k=args.k)
    else:
        if args.a is None:
            raise UsageError("tight scans require --a (real, 0.1 <= a <= 1)")
        window = make_window(args.n, a=args.a, tight=True)
    result = scan_boundedness_locus(window, args.density,
                                    EscapeSettings(max_iter=args.max_iter))
    scan_to_csv(result, args.out)
    print(f"wrote {args.out}: nodes={result.params.size} "
          f"bounded_global={int(result.bounded_global.sum())} "
          f"bounded_in_uprime={int(result.bounded_in_uprime.sum())} "
          f"contains_center={result.contains_center}")
    return EXIT_OK


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
