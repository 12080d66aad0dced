"""Command-line driver.

Exit codes: 0 success, 1 a numeric check failed, 2 usage error.  Results go
to stdout; progress logging goes to stderr.
"""

from __future__ import annotations

import argparse
import logging
import sys
import time

from . import kloosterman as kl
from . import suites
from .geometry import hypocycloid
from .lucas import format_table, format_table_csv, spider_table
from .modular import subgroup_from_generator, subgroup_of_order
from .render import ColorScheme, RenderOptions, read_csv, render_svg, write_csv

log = logging.getLogger("gksums")

GRID_GUARD = 20_000


class UsageError(Exception):
    pass


def _num(x: float) -> str:
    s = f"{x:.12f}"
    return s[1:] if s.startswith("-") and float(s) == 0 else s


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gksums", description="Generalized Kloosterman sums")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="evaluate one K(a, b, m, <omega>)")
    p.add_argument("--m", type=_positive, required=True)
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)

    p = sub.add_parser("grid", help="evaluate a full grid and write CSV")
    p.add_argument("--m", type=_positive, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--omega", type=int)
    g.add_argument("--order", type=_positive, help="order of the subgroup (m an odd prime power)")
    p.add_argument("--b", type=int, help="fix b; a runs over [0, m)")
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=_positive)
    p.add_argument("--force", action="store_true", help=f"allow m > {GRID_GUARD}")

    p = sub.add_parser("plot", help="render a grid CSV as SVG")
    p.add_argument("--in", dest="src", required=True)
    p.add_argument("--scheme", choices=["sum-mod-k", "legendre-ab", "dlog-diff-mod-4", "constant"], required=True)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--k", type=_positive)
    g.add_argument("--p", type=_positive)
    p.add_argument("--overlay-hypocycloid", type=int, metavar="D")
    p.add_argument("--units-only", action="store_true", help="drop points with p | ab")
    p.add_argument("--radius", type=float, default=1.0, help="marker radius in px")
    p.add_argument("--size", type=_positive, default=800, help="canvas size in px")
    p.add_argument("--out", required=True)

    p = sub.add_parser("verify", help="run a named check suite")
    p.add_argument("suite", choices=sorted(suites.SUITES))
    p.add_argument("--p", type=_positive)
    p.add_argument("--q", type=_positive)
    p.add_argument("--d", type=_positive)
    p.add_argument("--n", type=_positive, default=2, help="2-adic exponent for the halving suite")
    p.add_argument("--samples", type=_positive)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=_positive)

    p = sub.add_parser("spider", help="print the Lucas-prime moduli table")
    p.add_argument("--rows", type=_positive, required=True)
    p.add_argument("--csv", action="store_true")

    p = sub.add_parser("decompose", help="split K(a,b,m1*m2,<omega>) into its two CRT factors")
    p.add_argument("--m1", type=_positive, required=True)
    p.add_argument("--m2", type=_positive, required=True)
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    return ap


def _cmd_eval(args) -> int:
    if args.m < 2:
        raise UsageError("--m must be at least 2")
    value = kl.gks(args.a, args.b, subgroup_from_generator(args.m, args.omega))
    print(_num(value.real), _num(value.imag))
    return 0


def _cmd_grid(args) -> int:
    if args.m < 2:
        raise UsageError("--m must be at least 2")
    if args.m > GRID_GUARD and not args.force:
        raise UsageError(f"m={args.m} exceeds {GRID_GUARD}; pass --force for quadratic-size grids")
    if args.b is not None and not 0 <= args.b < args.m:
        raise UsageError("--b must lie in [0, m)")
    sub = subgroup_of_order(args.m, args.order) if args.order else subgroup_from_generator(args.m, args.omega)
    t = time.perf_counter()
    grid = kl.gks_grid(sub, b_range=args.b, workers=args.threads)
    log.info("grid m=%d order=%d: %d cells in %.2fs", args.m, sub.order, grid.values.size, time.perf_counter() - t)
    rows = write_csv(grid, args.out)
    log.info("wrote %d rows to %s", rows, args.out)
    return 0


def _cmd_plot(args) -> int:
    if args.scheme == "sum-mod-k" and not args.k:
        raise UsageError("sum-mod-k needs --k")
    if args.scheme in ("legendre-ab", "dlog-diff-mod-4") and not args.p:
        raise UsageError(f"{args.scheme} needs --p")
    if args.overlay_hypocycloid is not None and args.overlay_hypocycloid < 3:
        raise UsageError("--overlay-hypocycloid needs D >= 3")
    scheme = ColorScheme(args.scheme, k=args.k, p=args.p)
    pts = read_csv(args.src)
    if args.units_only and args.p:
        pts = pts.select((pts.a % args.p != 0) & (pts.b % args.p != 0))
    overlay = hypocycloid(args.overlay_hypocycloid) if args.overlay_hypocycloid else None
    opts = RenderOptions(point_radius=args.radius, canvas_size=args.size, overlay=overlay)
    n = render_svg(pts, scheme, opts, args.out)
    log.info("wrote %d bytes to %s", n, args.out)
    return 0


def _cmd_verify(args) -> int:
    fn = suites.SUITES[args.suite]
    kwargs = dict(p=args.p, q=args.q, d=args.d, seed=args.seed, workers=args.threads)
    if args.suite == "halving":
        kwargs["n"] = args.n
    if args.samples:
        kwargs["samples"] = args.samples
    result = fn(**kwargs)
    if args.suite == "conjecture-report":
        for r in result:
            print(r.summary())
        return 0
    print(result.summary())
    return 0 if result.ok else 1


def _cmd_spider(args) -> int:
    rows = spider_table(args.rows + 2)
    print(format_table_csv(rows) if args.csv else format_table(rows), end="" if args.csv else "\n")
    return 0


def _cmd_decompose(args) -> int:
    left, right, product = kl.crt_decompose(args.a, args.b, args.m1, args.m2, args.omega)
    direct = kl.gks(args.a, args.b, subgroup_from_generator(args.m1 * args.m2, args.omega))
    for name, z in (("left", left), ("right", right), ("product", product), ("direct", direct)):
        print(f"{name} {_num(z.real)} {_num(z.imag)}")
    return 0 if abs(product - direct) <= kl.IDENTITY_TOL else 1


COMMANDS = {
    "eval": _cmd_eval,
    "grid": _cmd_grid,
    "plot": _cmd_plot,
    "verify": _cmd_verify,
    "spider": _cmd_spider,
    "decompose": _cmd_decompose,
}


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr,
                        format="%(levelname)s %(message)s")
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ValueError, OverflowError) as exc:
        print(f"gksums {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
