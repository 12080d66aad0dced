"""Colour classes, CSV export and standalone SVG scatter plots of sum grids."""

from __future__ import annotations

import io
from dataclasses import dataclass, replace
from typing import IO

import numpy as np

from .geometry import HypocycloidRegion
from .kloosterman import SumGrid
from .modular import NotAUnit, discrete_log, discrete_log_table, factorize, legendre, primitive_root

PALETTE = ("blue", "red", "green", "purple", "orange", "teal", "brown", "gray")
SCHEMES = ("sum-mod-k", "legendre-ab", "dlog-diff-mod-4", "constant")
CSV_HEADER = "a,b,re,im,class"


class EmptyGrid(ValueError):
    pass


@dataclass(frozen=True)
class ColorScheme:
    kind: str = "constant"
    k: int | None = None
    p: int | None = None
    g: int | None = None

    def __post_init__(self):
        if self.kind not in SCHEMES:
            raise ValueError(f"unknown scheme {self.kind!r}; choose from {SCHEMES}")
        if self.kind == "sum-mod-k" and not (self.k and self.k >= 1):
            raise ValueError("sum-mod-k needs a positive k")
        if self.kind in ("legendre-ab", "dlog-diff-mod-4") and not self.p:
            raise ValueError(f"{self.kind} needs a prime p")
        if self.kind == "dlog-diff-mod-4" and self.g is None:
            object.__setattr__(self, "g", primitive_root(self.p))


def classify(a: int, b: int, scheme: ColorScheme) -> int:
    if scheme.kind == "constant":
        return 0
    if scheme.kind == "sum-mod-k":
        return (a + b) % scheme.k
    p = scheme.p
    if scheme.kind == "legendre-ab":
        return {1: 0, -1: 1, 0: 2}[legendre(a * b, p)]
    if (a * b) % p == 0:
        raise NotAUnit(f"{p} divides ab; no discrete logarithm")
    return (discrete_log(scheme.g, a, p) - discrete_log(scheme.g, b, p)) % 4


def classify_many(a, b, scheme: ColorScheme) -> np.ndarray:
    """Vectorized classify; dlog classes of non-units come back as -1."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if scheme.kind == "constant":
        return np.zeros(a.shape, dtype=np.int64)
    if scheme.kind == "sum-mod-k":
        return (a + b) % scheme.k
    p = scheme.p
    if scheme.kind == "legendre-ab":
        leg = np.array([legendre(x, p) for x in range(p)])
        sym = leg[(a % p) * (b % p) % p]
        return np.select([sym == 1, sym == -1], [0, 1], 2)
    logs = np.array(discrete_log_table(scheme.g, p))
    la, lb = logs[a % p], logs[b % p]
    return np.where((la < 0) | (lb < 0), -1, (la - lb) % 4)


def colorize(grid: SumGrid, scheme: ColorScheme) -> SumGrid:
    a, b = grid.coordinates()
    cls = classify_many(a, b, scheme).reshape(grid.values.shape)
    return replace(grid, color=cls)


@dataclass
class GridPoints:
    """Flat (a, b, value, class) columns, as stored in the CSV format."""

    a: np.ndarray
    b: np.ndarray
    values: np.ndarray
    classes: np.ndarray

    @classmethod
    def from_grid(cls, grid: SumGrid) -> "GridPoints":
        a, b = grid.coordinates()
        return cls(a, b, grid.values.ravel(), np.asarray(grid.color).ravel().astype(np.int64))

    def __len__(self) -> int:
        return len(self.a)

    def select(self, mask) -> "GridPoints":
        return GridPoints(self.a[mask], self.b[mask], self.values[mask], self.classes[mask])


def _open(dest, mode):
    if hasattr(dest, "write") or hasattr(dest, "read"):
        return dest, False
    return open(dest, mode, encoding="utf-8", newline=""), True


def write_csv(grid: SumGrid | GridPoints, dest: str | IO[str]) -> int:
    """Rows a,b,re,im,class in (a, b) order; floats to 12 significant digits."""
    pts = grid if isinstance(grid, GridPoints) else GridPoints.from_grid(grid)
    fh, owned = _open(dest, "w")
    try:
        fh.write(CSV_HEADER + "\n")
        fmt = "%d,%d,%.12g,%.12g,%d\n".__mod__
        chunk = 1 << 16
        # + 0.0 folds negative zeros so equal grids print identically
        re = pts.values.real + 0.0
        im = pts.values.imag + 0.0
        for i in range(0, len(pts), chunk):
            s = slice(i, i + chunk)
            rows = zip(pts.a[s].tolist(), pts.b[s].tolist(), re[s].tolist(), im[s].tolist(), pts.classes[s].tolist())
            fh.write("".join(map(fmt, rows)))
    finally:
        if owned:
            fh.close()
    return len(pts)


def read_csv(src: str | IO[str]) -> GridPoints:
    fh, owned = _open(src, "r")
    try:
        header = fh.readline().strip()
        if header != CSV_HEADER:
            raise ValueError(f"unexpected CSV header {header!r}")
        data = np.loadtxt(fh, delimiter=",", ndmin=2)
    finally:
        if owned:
            fh.close()
    if data.size == 0:
        data = np.zeros((0, 5))
    ints = data[:, [0, 1, 4]].astype(np.int64)
    return GridPoints(ints[:, 0], ints[:, 1], data[:, 2] + 1j * data[:, 3], ints[:, 2])


@dataclass(frozen=True)
class RenderOptions:
    point_radius: float = 1.0
    canvas_size: int = 800
    overlay: HypocycloidRegion | None = None
    opacity: float = 1.0
    # markers that land on the same printed position and class are drawn once
    dedupe: bool = True


def _fmt(x: float) -> str:
    s = f"{x:.2f}"
    return "0.00" if s == "-0.00" else s


def render_svg(grid: SumGrid | GridPoints, scheme: ColorScheme | None, options: RenderOptions | None, dest) -> int:
    """Write a standalone SVG scatter of the values; returns bytes written.

    The frame is the complex plane (real right, imaginary up) over [-R, R]^2
    with R = 1.05 * max(largest |value|, overlay radius).  Markers are drawn
    class by class, each class in (a, b) order.  ``scheme=None`` keeps the
    classes already attached to the points.
    """
    opts = options or RenderOptions()
    pts = grid if isinstance(grid, GridPoints) else GridPoints.from_grid(grid)
    if len(pts) == 0:
        raise EmptyGrid("nothing to plot")
    if scheme is not None:
        cls = classify_many(pts.a, pts.b, scheme)
        keep = cls >= 0
        pts = GridPoints(pts.a[keep], pts.b[keep], pts.values[keep], cls[keep])
        if len(pts) == 0:
            raise EmptyGrid("no point is classifiable under this scheme")
    size = opts.canvas_size
    radius = float(np.abs(pts.values).max())
    if opts.overlay is not None:
        radius = max(radius, opts.overlay.radius)
    extent = 1.05 * radius if radius > 0 else 1.0
    half = size / 2
    scale = half / extent

    x = np.round((half + pts.values.real * scale) * 100).astype(np.int64)
    y = np.round((half - pts.values.imag * scale) * 100).astype(np.int64)
    order = np.lexsort((pts.b, pts.a, pts.classes))
    x, y, cls = x[order], y[order], pts.classes[order]
    if opts.dedupe:
        span = 100 * size + 1
        key = (cls * span + x) * span + y
        _, first = np.unique(key, return_index=True)
        first.sort()
        x, y, cls = x[first], y[first], cls[first]

    out = io.StringIO()
    out.write('<?xml version="1.0" encoding="UTF-8"?>\n')
    out.write(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">\n'
    )
    out.write(f'<rect width="{size}" height="{size}" fill="white"/>\n')
    r = _fmt(opts.point_radius)
    op = "" if opts.opacity >= 1 else f' fill-opacity="{opts.opacity:g}"'
    starts = np.flatnonzero(np.r_[True, cls[1:] != cls[:-1]])
    ends = np.r_[starts[1:], cls.size]
    for s, e in zip(starts, ends):
        c = int(cls[s])
        out.write(f'<g class="class-{c}" fill="{PALETTE[c % len(PALETTE)]}"{op}>\n')
        out.write(
            "".join(
                # markers sit inside [0, size], so the fixed-point ints are nonnegative
                f'<circle cx="{xi // 100}.{xi % 100:02d}" cy="{yi // 100}.{yi % 100:02d}" r="{r}"/>\n'
                for xi, yi in zip(x[s:e].tolist(), y[s:e].tolist())
            )
        )
        out.write("</g>\n")
    if opts.overlay is not None:
        z = opts.overlay.boundary
        px = half + z.real * scale
        py = half - z.imag * scale
        d = "M" + " L".join(f"{_fmt(u)} {_fmt(v)}" for u, v in zip(px, py)) + " Z"
        out.write(f'<path class="overlay" d="{d}" fill="none" stroke="black" stroke-width="1"/>\n')
    out.write("</svg>\n")
    data = out.getvalue().encode("utf-8")
    fh, owned = (dest, False) if hasattr(dest, "write") else (open(dest, "wb"), True)
    try:
        fh.write(data)
    finally:
        if owned:
            fh.close()
    return len(data)


def suggested_k(m: int) -> int:
    """Colour modulus heuristic: m divided by its largest prime-power factor.

    For m = 4378 = 199 * 22 this gives 22.  Prime powers return m.
    """
    parts = [p**e for p, e in factorize(m)]
    if len(parts) < 2:
        return m
    return m // max(parts)
