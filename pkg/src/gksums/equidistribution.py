"""Point sets S_q and finite-scale uniform-distribution diagnostics.

For a fixed b, S_q holds one vector per a in [0, q): the fractional parts of
(a w^k + b w^{-k}) / q for k < phi(d), w the canonical order-d unit.  The
numerators are kept as exact integers so Weyl sums can be evaluated from
residue counts rather than from rounded coordinates.
"""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass

import numpy as np

from .geometry import HypocycloidRegion, contains_many
from .kloosterman import WrongResidueClass, root_table
from .modular import euler_phi, odd_prime_power, subgroup_of_order


class ZeroVector(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class LatticePointSet:
    dimension: int
    points: np.ndarray  # (count, dimension) floats in [0, 1)
    numerators: np.ndarray | None  # same shape, ints in [0, q); None for ad-hoc sets
    provenance: tuple  # (q, d, omega, b)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def modulus(self) -> int | None:
        return self.provenance[0] if self.provenance else None

    @classmethod
    def from_points(cls, points) -> "LatticePointSet":
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return cls(pts.shape[1], pts, None, ())

    def project(self, coords) -> "LatticePointSet":
        coords = list(coords)
        num = None if self.numerators is None else self.numerators[:, coords]
        return LatticePointSet(len(coords), self.points[:, coords], num, self.provenance)

    def write_csv(self, path) -> int:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["a"] + [f"x{k + 1}" for k in range(self.dimension)])
            for a, row in enumerate(self.points):
                w.writerow([a] + [f"{x:.12g}" for x in row])
        return len(self.points)


def build_s_q(q: int, d: int, b: int) -> LatticePointSet:
    p, _ = odd_prime_power(q)
    if (p - 1) % d:
        raise WrongResidueClass(f"{p} is not 1 mod {d}")
    omega = subgroup_of_order(q, d).generator
    winv = pow(omega, -1, q)
    dim = euler_phi(d)
    a = np.arange(q, dtype=np.int64)[:, None]
    fwd = np.array([pow(omega, k, q) for k in range(dim)], dtype=np.int64)
    back = np.array([pow(winv, k, q) for k in range(dim)], dtype=np.int64)
    num = (a * fwd[None, :] + (b % q) * back[None, :]) % q
    return LatticePointSet(dim, num / q, num, (q, d, omega, b))


def weyl_sum(points: LatticePointSet, y) -> float:
    """|mean of e(x . y)| over the set, for a nonzero integer vector y.

    For lattice sets the phase of each point is n/q with n = y . numerators mod q.
    A complete residue system sums to exactly zero, so the residue histogram is
    reduced by its minimum count before the numeric sum.
    """
    y = np.asarray(y, dtype=np.int64)
    if y.shape != (points.dimension,):
        raise ValueError(f"y must have length {points.dimension}")
    if not y.any():
        raise ZeroVector("y must be nonzero")
    count = len(points)
    if points.numerators is not None:
        q = points.modulus
        n = points.numerators @ y % q
        hist = np.bincount(n, minlength=q)
        hist -= hist.min()
        if not hist.any():
            return 0.0
        t = root_table(q)
        re = np.sum(hist * t.re) / count
        im = np.sum(hist * t.im) / count
    else:
        phase = 2 * np.pi * (points.points @ y)
        re = np.cos(phase).sum() / count
        im = np.sin(phase).sum() / count
    return float(min(1.0, np.hypot(re, im)))


def weyl_battery(points: LatticePointSet, span: int = 2) -> dict[tuple[int, ...], float]:
    """weyl_sum for every nonzero integer vector with entries in [-span, span]."""
    out = {}
    for y in itertools.product(range(-span, span + 1), repeat=points.dimension):
        if any(y):
            out[y] = weyl_sum(points, y)
    return out


def discrepancy_estimate(points: LatticePointSet, n_boxes: int, seed: int = 0) -> float:
    """Largest |fraction in box - box volume| over sampled boxes [lo, hi).

    The first box is always the unit cube; the other n_boxes - 1 corners are
    drawn uniformly from a seeded generator.  Sampling only ever under-reports
    the true discrepancy, so this is a lower bound.
    """
    if n_boxes < 1:
        raise ValueError("n_boxes must be at least 1")
    pts = points.points
    k = points.dimension
    rng = np.random.default_rng(seed)
    u = rng.random((n_boxes - 1, 2, k))
    lo = np.vstack([np.zeros((1, k)), u.min(axis=1)])
    hi = np.vstack([np.ones((1, k)), u.max(axis=1)])
    vol = np.prod(hi - lo, axis=1)
    worst = 0.0
    step = max(1, (1 << 22) // max(1, len(pts) * k))
    for i in range(0, n_boxes, step):
        l, h = lo[i : i + step, None, :], hi[i : i + step, None, :]
        inside = np.all((pts[None] >= l) & (pts[None] < h), axis=2)
        frac = inside.mean(axis=1)
        worst = max(worst, float(np.abs(frac - vol[i : i + step]).max()))
    return worst


def coverage_fraction(values, region: HypocycloidRegion, cells: int = 64) -> float:
    """Share of the region's grid cells that contain at least one value.

    A cells x cells grid is laid over the region's bounding box; a cell belongs
    to the region when its centre does.
    """
    xs, ys = region.boundary.real, region.boundary.imag
    x0, x1, y0, y1 = xs.min(), xs.max(), ys.min(), ys.max()
    cx = x0 + (np.arange(cells) + 0.5) * (x1 - x0) / cells
    cy = y0 + (np.arange(cells) + 0.5) * (y1 - y0) / cells
    member = contains_many(region, (cx[:, None] + 1j * cy[None, :]).ravel())
    v = np.asarray(values, dtype=complex).ravel()
    tol = region.tolerance
    keep = (v.real >= x0 - tol) & (v.real <= x1 + tol) & (v.imag >= y0 - tol) & (v.imag <= y1 + tol)
    v = v[keep]
    i = np.floor((v.real - x0) / (x1 - x0) * cells).astype(np.int64).clip(0, cells - 1)
    j = np.floor((v.imag - y0) / (y1 - y0) * cells).astype(np.int64).clip(0, cells - 1)
    hit = np.zeros(cells * cells, dtype=bool)
    hit[i * cells + j] = True
    return float((hit & member).sum() / member.sum())
