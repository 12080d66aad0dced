import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gksums.geometry import (
    NotOnTorus,
    boundary_samples,
    contains,
    contains_many,
    f_map,
    f_map_many,
    hypocycloid,
    hypocycloid_point,
)


def winding_oracle(z, poly):
    """Plain angle-sum winding number, one point at a time."""
    total = 0.0
    for u, v in zip(poly, np.roll(poly, -1)):
        total += cmath.phase((v - z) / (u - z))
    return round(total / (2 * math.pi))


def test_boundary_examples():
    assert abs(hypocycloid_point(3, 0.0) - 3) < 1e-15
    assert abs(hypocycloid_point(3, math.pi) - (-1)) < 1e-12
    assert abs(hypocycloid(5).radius - 5) < 1e-6
    with pytest.raises(ValueError):
        boundary_samples(2)
    with pytest.raises(ValueError):
        boundary_samples(3, n=10)


def test_contains_examples():
    h3 = hypocycloid(3)
    assert contains(h3, 0)
    assert contains(h3, 3)
    assert not contains(h3, 3.1)
    assert h3.contains(-1) and not h3.contains(-1.01)


@pytest.mark.parametrize("d", [3, 4, 5, 7])
def test_rotation_invariance(d):
    # a set-level match needs the rotation to land on sample angles, i.e. d | n
    n = 2048 * d
    z = boundary_samples(d, n=n).boundary
    rotated = z * cmath.exp(2j * math.pi / d)
    assert np.abs(rotated - np.roll(z, -(n // d))).max() < 1e-9


@pytest.mark.parametrize("d", [3, 4, 5, 7])
def test_f_map_image_contained(d):
    rng = np.random.default_rng(d)
    z = np.exp(2j * np.pi * rng.random((20_000, d - 1)))
    assert contains_many(hypocycloid(d), f_map_many(z)).all()


def test_f_map_examples():
    assert f_map([1, 1]) == 3
    w = cmath.exp(2j * math.pi / 3)
    assert abs(f_map([w, w]) - 3 * w) < 1e-12
    with pytest.raises(NotOnTorus):
        f_map([1, 2])


def test_f_map_many_large_sample_d5():
    rng = np.random.default_rng(5)
    z = np.exp(2j * np.pi * rng.random((100_000, 4)))
    assert contains_many(hypocycloid(5), f_map_many(z)).all()


@settings(max_examples=300)
@given(st.integers(3, 7), st.floats(-8, 8), st.floats(-8, 8))
def test_membership_agrees_with_angle_sum(d, x, y):
    region = boundary_samples(d, n=512)
    z = complex(x, y)
    poly = region.boundary
    dist = np.abs(poly - z).min()
    if dist < 1e-3:
        return
    assert contains(region, z) == (winding_oracle(z, poly) != 0)


@pytest.mark.parametrize("d", [3, 5])
def test_refinement_keeps_clear_verdicts(d):
    coarse, fine = boundary_samples(d, n=2048), boundary_samples(d, n=4096)
    rng = np.random.default_rng(0)
    z = (rng.random(5000) - 0.5) * 2.2 * d + 1j * (rng.random(5000) - 0.5) * 2.2 * d
    # polygon and oracle-curve sampling errors are both far below this margin
    margin = 2 * coarse.tolerance + 1e-2
    t = np.linspace(0, 2 * np.pi, 20_000, endpoint=False)
    curve = hypocycloid_point(d, t)
    near = np.array([np.abs(curve - w).min() for w in z]) < margin
    a, b = contains_many(coarse, z), contains_many(fine, z)
    assert np.array_equal(a[~near], b[~near])


def test_empty_and_far_inputs():
    h = hypocycloid(3)
    assert contains_many(h, []).shape == (0,)
    assert not contains_many(h, [10j, -10, 5 + 5j]).any()


def test_write_csv(tmp_path):
    region = boundary_samples(3, n=64)
    path = tmp_path / "h3.csv"
    assert region.write_csv(path) == 64
    lines = path.read_text().splitlines()
    assert lines[0] == "theta,re,im" and len(lines) == 65
    assert lines[1] == "0,3,0"
