"""Generalized Kloosterman sums K(a, b, m, <omega>) and their relatives.

Sums are evaluated through a shared table of m-th roots of unity: the term for
subgroup element u is ``roots[(a*u + b*u^{-1}) % m]``, accumulated with
Neumaier compensation in generator-power order.  Grid evaluation is handed to
the compiled kernel (or its numpy twin) row-block by row-block.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _backend
from .modular import (
    NotCoprime,
    OrderDoesNotDivide,
    UnitSubgroup,
    crt_split,
    discrete_log_table,
    euler_phi,
    is_prime,
    legendre,
    multiplicative_order,
    odd_prime_power,
    primitive_root,
    sqrt_mod,
    subgroup_from_generator,
    subgroup_of_order,
)
from .report import Report

# above this modulus no root table is built; gks evaluates each term directly
TABLE_LIMIT = 10**8

IDENTITY_TOL = 1e-8
BOUND_SLACK = 1e-9


class InvalidParity(ValueError):
    pass


class DividesAB(ValueError):
    pass


class WrongResidueClass(ValueError):
    pass


class BadForm(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class RootTable:
    modulus: int
    re: np.ndarray
    im: np.ndarray

    def __getitem__(self, t):
        return self.re[t] + 1j * self.im[t]


@lru_cache(maxsize=8)
def root_table(m: int) -> RootTable:
    """roots[t] = e(t/m), reduced to an eighth-turn so quarter points are exact.

    roots[m - t] is exactly conj(roots[t]).
    """
    if m > TABLE_LIMIT:
        raise ValueError(f"root table for m={m} exceeds TABLE_LIMIT")
    t = np.arange(m, dtype=np.int64)
    n = (8 * t + m) // (2 * m)
    # nearest quarter turn with ties to even, so t and m - t reduce symmetrically
    n -= ((8 * t + m) % (2 * m) == 0) & (n % 2 == 1)
    r =2.0 * np.pi * ((4 * t - n * m) / (4.0 * m))
    c, s = np.cos(r), np.sin(r)
    q = n % 4
    re = np.select([q == 0, q == 1, q == 2], [c, -s, -c], s)
    im = np.select([q == 0, q == 1, q == 2], [s, c, -s], -c)
    re = re + 0.0
    im = im + 0.0
    re.setflags(write=False)
    im.setflags(write=False)
    return RootTable(m, re, im)


def e(x: float) -> complex:
    return cmath.exp(2j * math.pi * x)


@lru_cache(maxsize=64)
def _index_arrays(subgroup: UnitSubgroup) -> tuple[np.ndarray, np.ndarray]:
    elems = np.array(subgroup.elements, dtype=np.int64)
    invs = np.array(subgroup.inverses, dtype=np.int64)
    return elems, invs


def gks_direct(a: int, b: int, subgroup: UnitSubgroup) -> complex:
    """Term-by-term transcendental evaluation, no table."""
    m = subgroup.modulus
    terms = [e(((a * u + b * v) % m) / m) for u, v in zip(subgroup.elements, subgroup.inverses)]
    return complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))


def gks_pairs(a, b, subgroup: UnitSubgroup) -> np.ndarray:
    """K(a[i], b[i], m, subgroup) for paired index arrays."""
    m = subgroup.modulus
    a = np.ascontiguousarray(np.asarray(a, dtype=np.int64) % m).ravel()
    b = np.ascontiguousarray(np.asarray(b, dtype=np.int64) % m).ravel()
    if a.shape != b.shape:
        raise ValueError("a and b must have the same length")
    if m > TABLE_LIMIT:
        return np.array([gks_direct(int(x), int(y), subgroup) for x, y in zip(a, b)])
    table = root_table(m)
    elems, invs = _index_arrays(subgroup)
    out_re = np.empty(a.shape)
    out_im = np.empty(a.shape)
    _backend.kernels().pair_sums(table.re, table.im, elems, invs, m, a, b, out_re, out_im)
    return out_re + 1j * out_im


def gks(a: int, b: int, subgroup: UnitSubgroup) -> complex:
    """K(a, b, m, Lambda) = sum over u in Lambda of e((a*u + b*u^{-1}) / m)."""
    return complex(gks_pairs([a], [b], subgroup)[0])


@dataclass
class SumGrid:
    modulus: int
    subgroup: UnitSubgroup
    a_range: range
    b_range: range
    values: np.ndarray
    color: np.ndarray = field(default=None)

    def __post_init__(self):
        shape = (len(self.a_range), len(self.b_range))
        if self.values.shape != shape:
            raise ValueError(f"values shape {self.values.shape} does not match ranges {shape}")
        if self.color is None:
            self.color = np.zeros(shape, dtype=np.uint8)

    def __getitem__(self, ab: tuple[int, int]) -> complex:
        a, b = ab
        return complex(self.values[self.a_range.index(a), self.b_range.index(b)])

    def coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Row-major (a, b) index arrays matching ``values.ravel()``."""
        a = np.repeat(np.asarray(self.a_range, dtype=np.int64), len(self.b_range))
        b = np.tile(np.asarray(self.b_range, dtype=np.int64), len(self.a_range))
        return a, b


def _as_range(r, m: int) -> range:
    if r is None:
        return range(m)
    if isinstance(r, int):
        return range(r, r + 1)
    if not isinstance(r, range):
        r = range(*r)
    if r.step != 1 or r.start < 0 or r.stop > m:
        raise ValueError(f"range {r} must be contiguous and within [0, {m})")
    return r


def default_workers() -> int:
    try:
        return len(os.sched_getaffinity(0))
    except AttributeError:
        return os.cpu_count() or 1


def gks_grid(subgroup: UnitSubgroup, a_range=None, b_range=None, workers: int | None = None) -> SumGrid:
    """Evaluate K(a, b) over a x b index ranges (default: the full [0, m) square).

    Rows are split into disjoint blocks handed to a thread pool; the kernels
    release the GIL.  Each cell is summed independently, so the output does
    not depend on the worker count.
    """
    m = subgroup.modulus
    if m > TABLE_LIMIT:
        raise ValueError(f"grids need a root table; m={m} exceeds {TABLE_LIMIT}")
    ar, br = _as_range(a_range, m), _as_range(b_range, m)
    table = root_table(m)
    elems, invs = _index_arrays(subgroup)
    kern = _backend.kernels()
    out_re = np.zeros((len(ar), len(br)))
    out_im = np.zeros((len(ar), len(br)))
    workers = workers or default_workers()
    n_blocks = min(len(ar), 4 * workers) or 1
    bounds = np.linspace(0, len(ar), n_blocks + 1).astype(int)

    def run(i):
        lo, hi = bounds[i], bounds[i + 1]
        kern.grid_block(table.re, table.im, elems, invs, m, ar.start + lo, br.start, out_re[lo:hi], out_im[lo:hi])

    if workers == 1:
        for i in range(n_blocks):
            run(i)
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(run, range(n_blocks)))
    return SumGrid(m, subgroup, ar, br, out_re + 1j * out_im)


def full_unit_group(p: int) -> UnitSubgroup:
    return subgroup_from_generator(p, primitive_root(p))


def classical(a: int, b: int, p: int) -> complex:
    """Classical Kloosterman sum over all units modulo the odd prime p."""
    return gks(a, b, full_unit_group(p))


def salie_direct(a: int, b: int, p: int) -> complex:
    """Salie sum: Legendre-weighted sum over u = 1..p-1, evaluated term by term."""
    terms = []
    for u in range(1, p):
        n = (a * u + b * pow(u, -1, p)) % p
        terms.append(legendre(u, p) * e(n / p))
    return complex(math.fsum(z.real for z in terms), math.fsum(z.imag for z in terms))


def tau(n: int) -> complex:
    if n % 2 == 0:
        raise InvalidParity(f"tau is defined for odd n, got {n}")
    root = math.sqrt(n)
    return complex(root, 0.0) if n % 4 == 1 else complex(0.0, root)


def salie_explicit(a: int, b: int, p: int) -> complex:
    """Closed form of the Salie sum for p not dividing ab.

    k is the smaller square root of 4ab; the other root gives the same cosine.
    """
    if (a * b) % p == 0:
        raise DividesAB(f"{p} divides ab; closed form does not apply")
    la, lb = legendre(a, p), legendre(b, p)
    if la != lb:
        return 0j
    k = sqrt_mod(4 * a * b % p, p)
    return la * 2 * tau(p) * math.cos(2 * math.pi * k / p)


def half_subgroup(p: int) -> UnitSubgroup:
    return subgroup_of_order(p, (p - 1) // 2)


def half_subgroup_identity(a: int, b: int, p: int) -> tuple[complex, complex]:
    """Both sides of K(a,b,p,(p-1)/2) = (T(a,b,p) + K(a,b,p)) / 2."""
    lhs = gks(a, b, half_subgroup(p))
    rhs = 0.5 * (salie_direct(a, b, p) + classical(a, b, p))
    return lhs, rhs


def _require_prime(p: int) -> None:
    if not is_prime(p) or p == 2:
        raise ValueError(f"{p} is not an odd prime")


def theorem3_check(p: int, workers: int | None = None) -> Report:
    """Square bound |Re|, |Im| <= sqrt(p)/2 for p not dividing ab, plus the p | ab values."""
    _require_prime(p)
    if p % 4 != 3:
        raise WrongResidueClass(f"{p} is not 3 mod 4")
    grid = gks_grid(half_subgroup(p), workers=workers)
    v = grid.values
    rep = Report(f"theorem3 p={p}")
    bound = math.sqrt(p) / 2
    units = v[1:, 1:]
    rep.record("|Re| <= sqrt(p)/2", np.abs(units.real) <= bound + BOUND_SLACK, np.abs(units.real) - bound)
    rep.record("|Im| <= sqrt(p)/2", np.abs(units.imag) <= bound + BOUND_SLACK, np.abs(units.imag) - bound)
    # the half-sum form (T + K)/2 only gives sqrt(p) per component; report the observed scale
    if units.size:
        rep.info[f"p={p} max |Re|/sqrt(p)"] = float(np.abs(units.real).max()) / math.sqrt(p)
        rep.info[f"p={p} max |Im|/sqrt(p)"] = float(np.abs(units.imag).max()) / math.sqrt(p)
    tp = tau(p)
    expect = np.array([0.5 * (legendre(x, p) * tp - 1) for x in range(1, p)])
    for label, got in (("a=0 column", v[0, 1:]), ("b=0 row (swap)", v[1:, 0])):
        err = np.abs(got - expect)
        rep.record(label, err <= IDENTITY_TOL, err)
    err = abs(v[0, 0] - (p - 1) / 2)
    rep.record("a=b=0", err <= IDENTITY_TOL, err)
    return rep


def _two_adic(p: int, n: int) -> int:
    """Odd cofactor d of p - 1 = 2**n * d, or BadForm."""
    if n < 1 or (p - 1) % (1 << n):
        raise BadForm(f"2**{n} does not divide {p} - 1")
    d = (p - 1) >> n
    if d % 2 == 0:
        raise BadForm(f"({p} - 1) / 2**{n} = {d} is even")
    return d


def real_halving(a: int, b: int, p: int, n: int) -> tuple[float, complex]:
    """(K(a,b,p,(p-1)/2^(n-1)), K(a,b,p,(p-1)/2^n)); the first is real and equals 2 Re of the second."""
    d = _two_adic(p, n)
    full = gks(a, b, subgroup_of_order(p, 2 * d))
    halved = gks(a, b, subgroup_of_order(p, d))
    return full.real, halved


def halving_check(p: int, n: int, workers: int | None = None) -> Report:
    d = _two_adic(p, n)
    full = gks_grid(subgroup_of_order(p, 2 * d), workers=workers).values
    halved = gks_grid(subgroup_of_order(p, d), workers=workers).values
    rep = Report(f"real-halving p={p} n={n}")
    rep.record("Im K(order 2d) = 0", np.abs(full.imag) <= BOUND_SLACK, np.abs(full.imag))
    err = np.abs(full - 2 * halved.real)
    rep.record("K(order 2d) = 2 Re K(order d)", err <= IDENTITY_TOL, err)
    return rep


def _unit_pairs(p: int, samples: int | None, seed: int) -> tuple[np.ndarray, np.ndarray]:
    if samples is None:
        a, b = np.meshgrid(np.arange(1, p), np.arange(1, p), indexing="ij")
        return a.ravel(), b.ravel()
    rng = np.random.default_rng(seed)
    return rng.integers(1, p, samples), rng.integers(1, p, samples)


def theorem5_check(p: int, samples: int | None = None, seed: int = 0) -> Report:
    """Real/imaginary bounds for K(a,b,p,(p-1)/4) by the class of r - s mod 4.

    a = g^r, b = g^s for the smallest primitive root g.  ``samples=None`` checks
    every unit pair.
    """
    _require_prime(p)
    if p % 8 != 5:
        raise WrongResidueClass(f"{p} is not 5 mod 8")
    g = primitive_root(p)
    logs = np.array(discrete_log_table(g, p))
    a, b = _unit_pairs(p, samples, seed)
    cls = (logs[a] - logs[b]) % 4
    vals = gks_pairs(a, b, subgroup_of_order(p, (p - 1) // 4))
    rep = Report(f"theorem5 p={p}")
    root = math.sqrt(p)
    re = np.abs(vals.real)
    wide = (cls == 0) | (cls == 2)
    rep.record("|Re| <= sqrt(p), r-s = 0,2", re[wide] <= root + BOUND_SLACK, re[wide] - root)
    rep.record("|Re| <= sqrt(p)/2, r-s = 1,3", re[~wide] <= root / 2 + BOUND_SLACK, re[~wide] - root / 2)
    im2 = np.abs(vals.imag[cls == 2])
    rep.record("Im = 0, r-s = 2", im2 <= IDENTITY_TOL, im2)
    rep.info["pairs"] = int(a.size)
    return rep


@dataclass
class ConjectureReport:
    p: int
    pairs: int
    max_imag: dict[int, float]
    bounds: dict[int, float]

    def holds(self, cls: int) -> bool:
        return self.max_imag[cls] <= self.bounds[cls] + BOUND_SLACK

    def summary(self) -> str:
        lines = [f"conjecture report p={self.p} ({self.pairs} unit pairs, informational)"]
        for c in range(4):
            b = self.bounds.get(c)
            tag = "no bound" if b is None else f"bound {b:.6f} {'holds' if self.holds(c) else 'VIOLATED'}"
            lines.append(f"  r-s = {c} mod 4: max |Im| = {self.max_imag[c]:.6f} ({tag})")
        return "\n".join(lines)


def conjecture_report(p: int) -> ConjectureReport:
    """Per-class maxima of |Im K(g^r, g^s, p, (p-1)/4)| over all unit pairs.

    K(a v, b v^{-1}) = K(a, b) for v in the subgroup <g^4>, so each value is
    attained on an orbit fixed by (r mod 4, r + s mod p-1); only those 4(p-1)
    representatives are evaluated.  Never raises on a violated bound.
    """
    _require_prime(p)
    if p % 8 != 5:
        raise WrongResidueClass(f"{p} is not 5 mod 8")
    g = primitive_root(p)
    n = p - 1
    powers = np.array([pow(g, k, p) for k in range(n)], dtype=np.int64)
    r, t = np.meshgrid(np.arange(4), np.arange(n), indexing="ij")
    r, t = r.ravel(), t.ravel()
    s = (t - r) % n
    vals = gks_pairs(powers[r], powers[s], subgroup_of_order(p, n // 4))
    cls = (r - s) % 4
    max_imag = {c: float(np.abs(vals.imag[cls == c]).max()) for c in range(4)}
    half = math.sqrt(2 * p) / 2
    bounds = {0: math.sqrt(p), 1: half, 3: half}
    return ConjectureReport(p, n * n, max_imag, bounds)


def _reduced_subgroup(m: int, omega: int) -> UnitSubgroup | None:
    return None if m == 1 else subgroup_from_generator(m, omega % m)


def crt_decompose(a: int, b: int, m1: int, m2: int, omega: int) -> tuple[complex, complex, complex]:
    """Factor K(a,b,m1*m2,<omega>) into sums modulo m1 and m2 (a modulus of 1 contributes 1)."""
    if math.gcd(m1, m2) != 1:
        raise NotCoprime(f"gcd({m1}, {m2}) != 1")
    if math.gcd(omega, m1 * m2) != 1:
        raise ValueError(f"{omega} is not a unit modulo {m1 * m2}")
    r1, r2 = crt_split(m1, m2)
    g1, g2 = _reduced_subgroup(m1, omega), _reduced_subgroup(m2, omega)
    left = 1 + 0j if g1 is None else gks(r2 * a, r2 * b, g1)
    right = 1 + 0j if g2 is None else gks(r1 * a, r1 * b, g2)
    return left, right, left * right


def crt_check(m1: int, m2: int, omega: int, samples: int | None = None, seed: int = 0) -> Report:
    m = m1 * m2
    if samples is None:
        a, b = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
        a, b = a.ravel(), b.ravel()
    else:
        rng = np.random.default_rng(seed)
        a, b = rng.integers(0, m, samples), rng.integers(0, m, samples)
    direct = gks_pairs(a, b, subgroup_from_generator(m, omega))
    r1, r2 = crt_split(m1, m2)
    left = gks_pairs(r2 * a, r2 * b, subgroup_from_generator(m1, omega % m1)) if m1 > 1 else 1
    right = gks_pairs(r1 * a, r1 * b, subgroup_from_generator(m2, omega % m2)) if m2 > 1 else 1
    err = np.abs(left * right - direct)
    rep = Report(f"crt m={m1}*{m2} omega={omega}")
    # the factorization needs <omega> = <omega mod m1> x <omega mod m2>, i.e. coprime orders
    o1 = multiplicative_order(omega % m1, m1) if m1 > 1 else 1
    o2 = multiplicative_order(omega % m2, m2) if m2 > 1 else 1
    rep.info[f"m={m1}*{m2} orders of omega"] = (o1, o2)
    rep.record("product = direct", err <= IDENTITY_TOL, err, cases=list(zip(a.tolist(), b.tolist())))
    return rep


def deltoid_triples(a: int, b: int, q: int) -> tuple[complex, complex, complex]:
    """The three deltoid terms zeta_j + zeta_{j+3} + 1/(zeta_j zeta_{j+3}), j = 1, 2, 3.

    zeta_k = e((a u^k + b u^{-k}) / q) with u the canonical order-9 generator;
    the three terms sum to K(a, b, q, 9).
    """
    u = subgroup_of_order(q, 9).generator
    table = root_table(q)
    uinv = pow(u, -1, q)
    zeta = {k: complex(table[(a * pow(u, k, q) + b * pow(uinv, k, q)) % q]) for k in range(1, 7)}
    return tuple(zeta[j] + zeta[j + 3] + 1 / (zeta[j] * zeta[j + 3]) for j in (1, 2, 3))


def cyclotomic_relation_check(q: int, d: int) -> bool:
    """1 + u + ... + u^(d-1) = 0 mod q for the canonical order-d generator u."""
    p, _ = odd_prime_power(q)
    if (p - 1) % d:
        raise OrderDoesNotDivide(f"{d} does not divide {p} - 1")
    u = subgroup_of_order(q, d).generator
    return sum(pow(u, k, q) for k in range(d)) % q == 0


__all__ = [
    "BadForm",
    "DividesAB",
    "InvalidParity",
    "WrongResidueClass",
    "RootTable",
    "SumGrid",
    "classical",
    "conjecture_report",
    "crt_check",
    "crt_decompose",
    "cyclotomic_relation_check",
    "deltoid_triples",
    "euler_phi",
    "gks",
    "gks_direct",
    "gks_grid",
    "gks_pairs",
    "half_subgroup_identity",
    "halving_check",
    "real_halving",
    "root_table",
    "salie_direct",
    "salie_explicit",
    "tau",
    "theorem3_check",
    "theorem5_check",
]
