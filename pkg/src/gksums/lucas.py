"""Lucas and Fibonacci numbers, order of appearance, and the Lucas-prime moduli table."""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass

from .modular import euler_phi, factorize, is_prime, legendre

# largest indices whose values the 64-bit contract covers
MAX_LUCAS_INDEX = 87
MAX_FIBONACCI_INDEX = 92


@dataclass(frozen=True)
class LucasRow:
    n: int
    p_n: int
    lucas: int
    phi: int


def lucas_number(k: int) -> int:
    if k < 0:
        raise ValueError("index must be nonnegative")
    if k > MAX_LUCAS_INDEX:
        raise OverflowError(f"L_{k} exceeds the 64-bit range (k <= {MAX_LUCAS_INDEX})")
    a, b = 2, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def fibonacci_number(k: int) -> int:
    if k < 0:
        raise ValueError("index must be nonnegative")
    if k > MAX_FIBONACCI_INDEX:
        raise OverflowError(f"F_{k} exceeds the 64-bit range (k <= {MAX_FIBONACCI_INDEX})")
    a, b = 0, 1
    for _ in range(k):
        a, b = b, a + b
    return a


def order_of_appearance(n: int) -> int:
    """Least k >= 1 with n | F_k, scanning F_k mod n (never more than 6n steps)."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return 1
    a, b = 0, 1
    for k in range(1, 6 * n + 1):
        a, b = b, (a + b) % n
        if a == 0:
            return k
    raise RuntimeError(f"no Fibonacci multiple of {n} within {6 * n} terms; this is a bug")


def lucas_mod8_sequence(count: int) -> list[int]:
    a, b = 2, 1
    out = []
    for _ in range(count):
        out.append(a)
        a, b = b, (a + b) % 8
    return out


def nth_prime(n: int) -> int:
    count, k = 0, 1
    while count < n:
        k += 1
        if is_prime(k):
            count += 1
    return k


def primes_between(lo: int, hi: int) -> list[int]:
    return [k for k in range(lo, hi + 1) if is_prime(k)]


def mod8_lemma_check(limit: int) -> bool:
    """L_k mod 8 has period 12 and never hits 0; so L_p has an odd prime factor for primes 5 <= p <= limit."""
    if limit < 12:
        raise ValueError("limit must be at least 12")
    seq = lucas_mod8_sequence(max(24, limit + 1))
    periodic = all(seq[k] == seq[k + 12] for k in range(len(seq) - 12))
    no_zero = 0 not in seq
    odd_factor = all(
        any(q % 2 for q in factorize(lucas_number(p)).primes)
        for p in primes_between(5, min(limit, MAX_LUCAS_INDEX))
    )
    return periodic and no_zero and odd_factor


def lucas_divisibility_check(p: int) -> bool:
    """p | phi(L_p), plus the intermediate facts for every odd prime factor q of L_p.

    q | F_{2p}, 2p | z(q), (q/5) = 1 and L_p^2 - 5 F_p^2 = 4 (-1)^p.
    """
    if p < 5 or not is_prime(p):
        raise ValueError(f"{p} is not a prime >= 5")
    lp, fp = lucas_number(p), fibonacci_number(p)
    if 2 * p > MAX_FIBONACCI_INDEX:
        raise OverflowError(f"F_{2 * p} exceeds the 64-bit range")
    f2p = fibonacci_number(2 * p)
    ok = euler_phi(lp) % p == 0
    ok &= lp * lp - 5 * fp * fp == 4 * (-1) ** p
    ok &= f2p == lp * fp
    for q in factorize(lp).primes:
        if q % 2 == 0:
            continue
        ok &= f2p % q == 0
        ok &= order_of_appearance(q) % (2 * p) == 0
        ok &= q != 5 and legendre(q, 5) == 1
    return bool(ok)


def spider_table(n_max: int) -> list[LucasRow]:
    """Rows n = 3..n_max of (n, p(n), L_{p(n)}, phi(L_{p(n)}))."""
    if n_max < 3:
        raise ValueError("n_max must be at least 3")
    rows = []
    for n in range(3, n_max + 1):
        p = nth_prime(n)
        lp = lucas_number(p)
        rows.append(LucasRow(n, p, lp, euler_phi(lp)))
    return rows


TABLE_HEADER = ("n", "p(n)", "L_p(n)", "phi(L_p(n))")


def format_table(rows: list[LucasRow]) -> str:
    cells = [TABLE_HEADER] + [tuple(str(x) for x in astuple(r)) for r in rows]
    widths = [max(len(c[i]) for c in cells) for i in range(4)]
    return "\n".join("  ".join(c[i].rjust(widths[i]) for i in range(4)) for c in cells)


def format_table_csv(rows: list[LucasRow]) -> str:
    lines = ["n,p_n,lucas,phi"] + [",".join(str(x) for x in astuple(r)) for r in rows]
    return "\n".join(lines) + "\n"


def fibonacci_gcd_holds(a: int, b: int) -> bool:
    return math.gcd(fibonacci_number(a), fibonacci_number(b)) == fibonacci_number(math.gcd(a, b))
