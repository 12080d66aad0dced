"""Filled hypocycloids and point membership.

The boundary theta -> (d-1) e^{i theta} + e^{(1-d) i theta} is sampled into a
closed polygon.  Membership is the winding number of that polygon, widened by
a tolerance band so boundary-grazing values (the cusp value d, for instance)
count as inside.  Edges are bucketed into horizontal slabs so each point is
only tested against the handful of edges near its height.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

DEFAULT_SAMPLES = 8192
DEFAULT_TOLERANCE = 1e-6


class NotOnTorus(ValueError):
    pass


def hypocycloid_point(d: int, theta):
    return (d - 1) * np.exp(1j * theta) + np.exp((1 - d) * 1j * theta)


@dataclass(frozen=True, eq=False)
class HypocycloidRegion:
    cusps: int
    boundary: np.ndarray
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def radius(self) -> float:
        return float(np.abs(self.boundary).max())

    @cached_property
    def _edges(self):
        z0 = self.boundary
        z1 = np.roll(z0, -1)
        return z0.real, z0.imag, z1.real, z1.imag

    @cached_property
    def _inner_radius(self) -> float:
        # points closer to the origin than every edge share its winding number
        return float(_segment_distance(np.zeros(1), *self._edges).min())

    @cached_property
    def _slabs(self):
        x0, y0, x1, y1 = self._edges
        lo = np.minimum(y0, y1) - self.tolerance
        hi = np.maximum(y0, y1) + self.tolerance
        n = max(1, len(x0) // 16)
        ymin, ymax = lo.min(), hi.max()
        height = (ymax - ymin) / n
        first = np.floor((lo - ymin) / height).astype(int).clip(0, n - 1)
        last = np.floor((hi - ymin) / height).astype(int).clip(0, n - 1)
        buckets = [[] for _ in range(n)]
        for i, (f, l) in enumerate(zip(first, last)):
            for s in range(f, l + 1):
                buckets[s].append(i)
        return ymin, height, [np.array(b, dtype=np.int64) for b in buckets]

    def contains(self, z) -> bool:
        return bool(contains_many(self, [z])[0])

    def write_csv(self, path) -> int:
        """Boundary polygon as rows theta,re,im."""
        n = len(self.boundary)
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["theta", "re", "im"])
            for j, z in enumerate(self.boundary):
                w.writerow([f"{2 * math.pi * j / n:.12g}", f"{z.real:.12g}", f"{z.imag:.12g}"])
        return n


def boundary_samples(d: int, n: int = DEFAULT_SAMPLES, tolerance: float = DEFAULT_TOLERANCE) -> HypocycloidRegion:
    if d < 3:
        raise ValueError("a hypocycloid needs at least 3 cusps")
    if n < 64:
        raise ValueError("use at least 64 boundary samples")
    theta = 2 * np.pi * np.arange(n) / n
    z = hypocycloid_point(d, theta)
    z.setflags(write=False)
    return HypocycloidRegion(d, z, tolerance)


@lru_cache(maxsize=16)
def hypocycloid(d: int) -> HypocycloidRegion:
    """Shared default region (8192 samples, tolerance 1e-6) for d cusps."""
    return boundary_samples(d)


def _segment_distance(z, x0, y0, x1, y1):
    """Distance from each point in z (k,) to each segment (e,), shape (k, e)."""
    px = z.real[:, None]
    py = z.imag[:, None]
    dx, dy = x1 - x0, y1 - y0
    t = ((px - x0) * dx + (py - y0) * dy) / (dx * dx + dy * dy)
    t = np.clip(t, 0.0, 1.0)
    return np.hypot(px - (x0 + t * dx), py - (y0 + t * dy))


def _winding(z, x0, y0, x1, y1):
    px = z.real[:, None]
    py = z.imag[:, None]
    left = (x1 - x0) * (py - y0) - (px - x0) * (y1 - y0)
    up = (y0 <= py) & (y1 > py) & (left > 0)
    down = (y0 > py) & (y1 <= py) & (left < 0)
    return up.sum(axis=1) - down.sum(axis=1)


def contains_many(region: HypocycloidRegion, zs) -> np.ndarray:
    """Vectorized membership: winding number != 0, or within tolerance of the boundary."""
    z = np.asarray(zs, dtype=complex).ravel()
    out = np.zeros(z.size, dtype=bool)
    r = np.abs(z)
    out[r < region._inner_radius] = True
    todo = np.flatnonzero(~out & (r <= region.radius + region.tolerance))
    if todo.size == 0:
        return out
    ymin, height, buckets = region._slabs
    slab = np.floor((z.imag[todo] - ymin) / height).astype(np.int64)
    ok = (slab >= 0) & (slab < len(buckets))
    todo, slab = todo[ok], slab[ok]
    if todo.size == 0:
        return out
    order = np.argsort(slab, kind="stable")
    todo, slab = todo[order], slab[order]
    starts = np.flatnonzero(np.r_[True, slab[1:] != slab[:-1]])
    ends = np.r_[starts[1:], slab.size]
    x0, y0, x1, y1 = region._edges
    for s, e in zip(starts, ends):
        edges = buckets[slab[s]]
        if edges.size == 0:
            continue
        pts = z[todo[s:e]]
        seg = (x0[edges], y0[edges], x1[edges], y1[edges])
        hit = _winding(pts, *seg) != 0
        near = ~hit
        if near.any():
            hit[near] = _segment_distance(pts[near], *seg).min(axis=1) <= region.tolerance
        out[todo[s:e]] = hit
    return out


def contains(region: HypocycloidRegion, z) -> bool:
    return region.contains(z)


def f_map(z_list) -> complex:
    """z_1 + ... + z_{d-1} + 1/(z_1 ... z_{d-1}) for points on the unit circle."""
    z = np.asarray(z_list, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1) > 1e-6):
        raise NotOnTorus("every argument must have modulus 1")
    return complex(z.sum() + 1 / np.prod(z))


def f_map_many(z) -> np.ndarray:
    """Row-wise f_map for an (N, d-1) array of torus points."""
    z = np.asarray(z, dtype=complex)
    if np.any(np.abs(np.abs(z) - 1) > 1e-6):
        raise NotOnTorus("every argument must have modulus 1")
    return z.sum(axis=1) + 1 / np.prod(z, axis=1)
