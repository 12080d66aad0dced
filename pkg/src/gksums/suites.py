"""Named verification suites behind ``gksums verify``.

Each suite returns a Report; parameters default to desk-scale settings and
can be narrowed from the command line (``--p``, ``--q``, ``--samples``...).
"""

from __future__ import annotations

import math

import numpy as np

from . import kloosterman as kl
from .equidistribution import build_s_q, coverage_fraction, discrepancy_estimate, weyl_battery, weyl_sum
from .geometry import contains_many, hypocycloid
from .lucas import (
    MAX_FIBONACCI_INDEX,
    fibonacci_gcd_holds,
    fibonacci_number,
    lucas_divisibility_check,
    lucas_mod8_sequence,
    lucas_number,
    mod8_lemma_check,
    primes_between,
    spider_table,
)
from .modular import subgroup_from_generator, subgroup_of_order
from .report import Report

MODULI_TABLE = [
    (3, 5, 11, 10),
    (4, 7, 29, 28),
    (5, 11, 199, 198),
    (6, 13, 521, 520),
    (7, 17, 3571, 3570),
    (8, 19, 9349, 9348),
    (9, 23, 64079, 63480),
    (10, 29, 1149851, 1130304),
    (11, 31, 3010349, 3010348),
]


def _primes(p, default):
    return default if p is None else [p]


def oracle(samples: int = 200, seed: int = 0, max_m: int = 2000, **_) -> Report:
    """Table-driven sums against term-by-term exp() evaluation, |error| <= d * 1e-12."""
    rng = np.random.default_rng(seed)
    rep = Report("oracle")
    for _ in range(samples):
        m = int(rng.integers(2, max_m + 1))
        omega = int(rng.integers(1, m))
        while math.gcd(omega, m) != 1:
            omega = int(rng.integers(1, m))
        a, b = (int(x) for x in rng.integers(0, m, 2))
        sub = subgroup_from_generator(m, omega)
        err = abs(kl.gks(a, b, sub) - kl.gks_direct(a, b, sub))
        rep.record("table vs direct", err <= sub.order * 1e-12, err / sub.order, cases=[(m, omega, a, b)])
    return rep


SYMMETRY_CASES = [(5, 2), (7, 2), (22, 5), (199, 92), (4378, 291), (890, 479)]


def symmetry(samples: int = 2000, seed: int = 0, **_) -> Report:
    """Conjugation, argument swap and orbit invariance of K(a, b, m, <w>)."""
    rep = Report("symmetry")
    rng = np.random.default_rng(seed)
    for m, w in SYMMETRY_CASES:
        sub = subgroup_from_generator(m, w)
        if m <= 400:
            a, b = (x.ravel() for x in np.meshgrid(np.arange(m), np.arange(m), indexing="ij"))
        else:
            a, b = rng.integers(0, m, samples), rng.integers(0, m, samples)
        k = kl.gks_pairs(a, b, sub)
        err = np.abs(np.conj(k) - kl.gks_pairs(-a, -b, sub))
        rep.record("conj(K(a,b)) = K(-a,-b)", err <= 1e-9, err)
        err = np.abs(k - kl.gks_pairs(b, a, sub))
        rep.record("K(a,b) = K(b,a)", err <= 1e-9, err)
        v = np.array(sub.elements)[rng.integers(0, sub.order, a.size)]
        vinv = np.array([pow(int(x), -1, m) for x in v])
        err = np.abs(k - kl.gks_pairs(a * v % m, b * vinv % m, sub))
        rep.record("K(av, b/v) = K(a,b)", err <= 1e-9, err)
        mag = np.abs(k) - sub.order
        rep.record("|K| <= |Lambda|", mag <= 1e-9, mag)
    return rep


def crt(samples: int = 100, seed: int = 0, **_) -> Report:
    rep = kl.crt_check(3, 5, 2)
    rep.merge(kl.crt_check(199, 22, 291, samples=samples, seed=seed))
    rep.name = "crt"
    return rep


SALIE_PRIMES = [5, 7, 11, 13, 19, 23]


def salie(p: int | None = None, **_) -> Report:
    """Direct Salie sums against the closed form, every pair with p not dividing ab."""
    rep = Report("salie")
    for q in _primes(p, SALIE_PRIMES):
        for a in range(1, q):
            for b in range(1, q):
                direct = kl.salie_direct(a, b, q)
                explicit = kl.salie_explicit(a, b, q)
                err = abs(direct - explicit)
                rep.record("direct = explicit", err <= kl.IDENTITY_TOL, err, cases=[(q, a, b)])
                if explicit == 0:
                    rep.record("mixed residues give 0", abs(direct) <= kl.IDENTITY_TOL, abs(direct), cases=[(q, a, b)])
    return rep


def duke_identity(p: int | None = None, **_) -> Report:
    """K(a,b,p,(p-1)/2) = (T + K) / 2 over every pair (a, b)."""
    rep = Report("duke-identity")
    for q in _primes(p, [7, 11, 23]):
        for a in range(q):
            for b in range(q):
                lhs, rhs = kl.half_subgroup_identity(a, b, q)
                err = abs(lhs - rhs)
                rep.record("half subgroup", err <= kl.IDENTITY_TOL, err, cases=[(q, a, b)])
    return rep


def theorem3(p: int | None = None, workers: int | None = None, **_) -> Report:
    rep = Report("theorem3")
    for q in _primes(p, [7, 379]):
        rep.merge(kl.theorem3_check(q, workers=workers))
    return rep


def halving(p: int | None = None, n: int = 2, workers: int | None = None, **_) -> Report:
    rep = Report("halving")
    for q in _primes(p, [13, 29]):
        rep.merge(kl.halving_check(q, n, workers=workers))
    return rep


def theorem5(p: int | None = None, samples: int | None = None, seed: int = 0, **_) -> Report:
    rep = Report("theorem5")
    if p is not None:
        return rep.merge(kl.theorem5_check(p, samples=samples, seed=seed))
    for q in (13, 29):
        rep.merge(kl.theorem5_check(q))
    return rep.merge(kl.theorem5_check(6053, samples=samples or 5000, seed=seed))


def conjecture(p: int | None = None, **_) -> list[kl.ConjectureReport]:
    return [kl.conjecture_report(q) for q in _primes(p, [13, 6053])]


CONTAINMENT_CASES = [(67, 3), (193, 3), (1279, 3), (151, 5), (491, 7)]


def hypocycloid_suite(p: int | None = None, d: int | None = None, workers: int | None = None, **_) -> Report:
    """Every grid value K(a,b,p,d) lies in the filled d-cusped hypocycloid."""
    rep = Report("hypocycloid")
    cases = CONTAINMENT_CASES if p is None else [(p, d or 3)]
    for q, dd in cases:
        values = kl.gks_grid(subgroup_of_order(q, dd), workers=workers).values.ravel()
        inside = contains_many(hypocycloid(dd), values)
        rep.record(f"p={q} d={dd} in H_{dd}", inside, cases=values)
        rep.record(f"cyclotomic relation q={q} d={dd}", kl.cyclotomic_relation_check(q, dd))
    return rep


def tiled(q: int | None = None, samples: int = 500, seed: int = 0, **_) -> Report:
    """Order-9 sums split into three deltoid terms, each inside H_3."""
    rep = Report("tiled")
    region = hypocycloid(3)
    cases = [(19, None), (523, samples)] if q is None else [(q, samples if q > 100 else None)]
    for qq, n in cases:
        if n is None:
            pairs = [(a, b) for a in range(qq) for b in range(qq)]
        else:
            rng = np.random.default_rng(seed)
            pairs = [tuple(int(x) for x in rng.integers(0, qq, 2)) for _ in range(n)]
        a = np.array([x for x, _ in pairs])
        b = np.array([y for _, y in pairs])
        direct = kl.gks_pairs(a, b, subgroup_of_order(qq, 9))
        triples = np.array([kl.deltoid_triples(x, y, qq) for x, y in pairs])
        err = np.abs(triples.sum(axis=1) - direct)
        rep.record(f"q={qq} triple sum = K(a,b,q,9)", err <= kl.IDENTITY_TOL, err, cases=pairs)
        inside = contains_many(region, triples.ravel()).reshape(triples.shape).all(axis=1)
        rep.record(f"q={qq} each triple in H_3", inside, cases=pairs)
    return rep


WEYL_PRIMES = (67, 193, 1279)


def weyl(n_boxes: int = 10_000, seed: int = 0, **_) -> Report:
    """Finite-scale uniform-distribution trend for d = 3, b = 1."""
    rep = Report("weyl")
    sets = [build_s_q(q, 3, 1) for q in WEYL_PRIMES]
    sums = [weyl_sum(s, (1, 1)) for s in sets]
    disc = [discrepancy_estimate(s, n_boxes, seed) for s in sets]
    rep.info["weyl_sum y=(1,1)"] = dict(zip(WEYL_PRIMES, sums))
    rep.info["max weyl over battery"] = {q: max(weyl_battery(s).values()) for q, s in zip(WEYL_PRIMES, sets)}
    rep.info["discrepancy"] = dict(zip(WEYL_PRIMES, disc))
    rep.record("weyl_sum strictly decreasing", all(x > y for x, y in zip(sums, sums[1:])))
    rep.record("discrepancy(1279) < discrepancy(67)", disc[-1] < disc[0])
    cover = [coverage_fraction(kl.gks_grid(subgroup_of_order(q, 3), b_range=1).values, hypocycloid(3)) for q in WEYL_PRIMES]
    rep.info["H_3 cell coverage, b=1"] = dict(zip(WEYL_PRIMES, cover))
    rep.record("coverage nondecreasing", all(x <= y for x, y in zip(cover, cover[1:])))
    return rep


def lucas(**_) -> Report:
    rep = Report("lucas")
    rows = spider_table(11)
    for row, expect in zip(rows, MODULI_TABLE):
        rep.record(f"moduli table n={expect[0]}", (row.n, row.p_n, row.lucas, row.phi) == expect, cases=[row])
    for p in primes_between(5, 31):
        rep.record("p | phi(L_p)", lucas_divisibility_check(p), cases=[p])
    for p in primes_between(3, 43):
        lp, fp = lucas_number(p), fibonacci_number(p)
        rep.record("F_2p = L_p F_p", fibonacci_number(2 * p) == lp * fp, cases=[p])
        rep.record("L_p^2 - 5F_p^2 = 4(-1)^p", lp * lp - 5 * fp * fp == 4 * (-1) ** p, cases=[p])
    ok = [fibonacci_gcd_holds(a, b) for a in range(1, 61) for b in range(1, 61)]
    rep.record("gcd(F_a, F_b) = F_gcd(a,b)", ok)
    seq = lucas_mod8_sequence(24)
    rep.record("L_k mod 8 period 12", seq[:12] == seq[12:24])
    rep.record("L_k mod 8 never 0", 0 not in seq)
    rep.record("mod-8 lemma (odd prime factor)", mod8_lemma_check(MAX_FIBONACCI_INDEX // 2))
    return rep


SUITES = {
    "oracle": oracle,
    "symmetry": symmetry,
    "crt": crt,
    "salie": salie,
    "duke-identity": duke_identity,
    "theorem3": theorem3,
    "halving": halving,
    "theorem5": theorem5,
    "conjecture-report": conjecture,
    "hypocycloid": hypocycloid_suite,
    "tiled": tiled,
    "weyl": weyl,
    "lucas": lucas,
}
