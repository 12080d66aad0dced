"""Compare the compiled grid kernel with the numpy fallback.

    python benchmarks/bench_kernels.py --repeat 3

Both backends must produce bitwise-identical grids; the script checks that
before reporting timings.
"""

import argparse
import time

import numpy as np

from gksums import _backend
from gksums.kloosterman import gks_grid
from gksums.modular import subgroup_of_order

CASES = [(199, 3), (1279, 3), (491, 7), (1907, 953), (3571, 17)]


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--rows", type=int, default=200, help="grid rows per case (columns are always full)")
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    names = _backend.available()
    print(f"backends: {', '.join(names)}; threads={args.threads}; best of {args.repeat}")
    print(f"{'p':>6} {'d':>5} {'terms':>12} " + " ".join(f"{n:>12}" for n in names) + "   speedup")
    for p, d in CASES:
        sub = subgroup_of_order(p, d)
        rows = (0, min(p, args.rows))
        timings, grids = {}, {}
        for name in names:
            prev = _backend.use(name)
            try:
                timings[name], grids[name] = best_of(
                    lambda: gks_grid(sub, a_range=rows, workers=args.threads).values, args.repeat
                )
            finally:
                _backend.use(prev)
        ref = grids[names[0]]
        if not all(np.array_equal(ref, g) for g in grids.values()):
            raise SystemExit(f"backend mismatch at p={p}, d={d}")
        terms = ref.size * d
        speed = timings["python"] / timings["compiled"] if "compiled" in timings else float("nan")
        cols = " ".join(f"{timings[n]:>11.3f}s" for n in names)
        print(f"{p:>6} {d:>5} {terms:>12,} {cols}   {speed:>6.1f}x")


if __name__ == "__main__":
    main()
