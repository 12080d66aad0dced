"""Exact modular arithmetic and unit-group structure.

Everything here works on Python ints.  Moduli used to build subgroups are
capped at ``MAX_MODULUS`` so that residue products stay inside signed 64-bit
integers in the compiled kernels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

MAX_MODULUS = 2**31


class NotInvertible(ValueError):
    pass


class NotAUnit(ValueError):
    pass


class NotPrimePower(ValueError):
    pass


class OrderDoesNotDivide(ValueError):
    pass


class NotAResidue(ValueError):
    pass


class NotCoprime(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    value: int
    prime_powers: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.prime_powers]

    def __iter__(self):
        return iter(self.prime_powers)


@dataclass(frozen=True)
class UnitSubgroup:
    """Cyclic subgroup <generator> of the units modulo ``modulus``.

    ``elements[k]`` is ``generator**k % modulus``; grid code indexes terms by k,
    so this ordering is part of the contract.
    """

    modulus: int
    generator: int
    order: int
    elements: tuple[int, ...]

    def __post_init__(self):
        m = self.modulus
        if not 2 <= m < MAX_MODULUS:
            raise ValueError(f"modulus must lie in [2, 2**31), got {m}")
        if len(self.elements) != self.order or self.elements[0] != 1:
            raise ValueError("elements must be the powers of the generator starting at 1")

    @property
    def inverses(self) -> tuple[int, ...]:
        # u^{-k} = u^{d-k}, so the inverse list is a reindexing of elements
        d = self.order
        return tuple(self.elements[(d - k) % d] for k in range(d))

    def __contains__(self, u: int) -> bool:
        return u % self.modulus in set(self.elements)

    def __len__(self) -> int:
        return self.order


def mod_pow(base: int, exp: int, m: int) -> int:
    if m < 1:
        raise ValueError("modulus must be positive")
    if exp < 0:
        raise ValueError("exponent must be nonnegative")
    return pow(base, exp, m)


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b)."""
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def mod_inv(u: int, m: int) -> int:
    if m < 2:
        raise ValueError("modulus must be at least 2")
    g, x, _ = xgcd(u % m, m)
    if g != 1:
        raise NotInvertible(f"{u} is not invertible modulo {m}")
    return x % m


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Trial-division factorization; deterministic, fine for n below ~2**62."""
    if n < 1:
        raise ValueError("n must be positive")
    value = n
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    step = 2
    while f * f <= n:
        if n % f == 0:
            e = 0
            while n % f == 0:
                n //= f
                e += 1
            out.append((f, e))
        f += step
        step = 6 - step
    if n > 1:
        out.append((n, 1))
    return Factorization(value, tuple(out))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    fac = factorize(n).prime_powers
    return fac == ((n, 1),)


def odd_prime_power(q: int) -> tuple[int, int]:
    """Return (p, alpha) with q = p**alpha, p odd; raise NotPrimePower otherwise."""
    if q < 3:
        raise NotPrimePower(f"{q} is not an odd prime power")
    fac = factorize(q).prime_powers
    if len(fac) != 1 or fac[0][0] == 2:
        raise NotPrimePower(f"{q} is not an odd prime power")
    return fac[0]


def multiplicative_order(u: int, m: int) -> int:
    if m == 1:
        return 1
    u %= m
    if math.gcd(u, m) != 1:
        raise NotAUnit(f"{u} is not a unit modulo {m}")
    order = euler_phi(m)
    for p, _ in factorize(order):
        while order % p == 0 and pow(u, order // p, m) == 1:
            order //= p
    return order


@lru_cache(maxsize=1024)
def primitive_root(q: int) -> int:
    """Smallest g >= 2 generating the units modulo the odd prime power q."""
    odd_prime_power(q)
    phi = euler_phi(q)
    primes = factorize(phi).primes
    for g in range(2, q):
        if math.gcd(g, q) == 1 and all(pow(g, phi // p, q) != 1 for p in primes):
            return g
    raise AssertionError(f"no primitive root found modulo {q}")  # unreachable for odd prime powers


def subgroup_from_generator(m: int, omega: int) -> UnitSubgroup:
    omega %= m
    if math.gcd(omega, m) != 1:
        raise NotAUnit(f"{omega} is not a unit modulo {m}")
    elements = [1]
    x = omega
    while x != 1:
        elements.append(x)
        x = x * omega % m
    return UnitSubgroup(m, omega, len(elements), tuple(elements))


def subgroup_of_order(q: int, d: int) -> UnitSubgroup:
    """The unique order-d subgroup of the units modulo an odd prime power."""
    odd_prime_power(q)
    phi = euler_phi(q)
    if d < 1 or phi % d:
        raise OrderDoesNotDivide(f"{d} does not divide phi({q}) = {phi}")
    g = primitive_root(q)
    return subgroup_from_generator(q, pow(g, phi // d, q))


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_mod(a: int, p: int) -> int:
    """Smaller square root of a modulo the odd prime p (Tonelli-Shanks)."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise NotAResidue(f"{a} is not a quadratic residue modulo {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        c = pow(z, q, p)
        r = pow(a, (q + 1) // 2, p)
        t = pow(a, q, p)
        m = s
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            r = r * b % p
            c = b * b % p
            t = t * c % p
            m = i
    return min(r, p - r)


def discrete_log(g: int, a: int, q: int) -> int:
    """Least r >= 0 with g**r = a (mod q), by baby-step giant-step."""
    a %= q
    if math.gcd(a, q) != 1:
        raise NotAUnit(f"{a} is not a unit modulo {q}")
    n = euler_phi(q)
    step = math.isqrt(n - 1) + 1
    baby = {}
    x = 1
    for j in range(step):
        baby.setdefault(x, j)
        x = x * g % q
    giant = pow(g, -step, q)
    y = a
    for i in range(step + 1):
        j = baby.get(y)
        if j is not None:
            return i * step + j
        y = y * giant % q
    raise NotAUnit(f"{a} is not a power of {g} modulo {q}")


def discrete_log_table(g: int, q: int) -> list[int]:
    """log[x] for every unit x modulo q (-1 for non-units); one pass over the powers of g."""
    table = [-1] * q
    x = 1
    for r in range(euler_phi(q)):
        if table[x] != -1:
            raise ValueError(f"{g} is not a primitive root modulo {q}")
        table[x] = r
        x = x * g % q
    return table


def crt_split(m1: int, m2: int) -> tuple[int, int]:
    """Cross inverses (m1^{-1} mod m2, m2^{-1} mod m1); inverses modulo 1 are 0."""
    if math.gcd(m1, m2) != 1:
        raise NotCoprime(f"gcd({m1}, {m2}) != 1")
    r1 = 0 if m2 == 1 else mod_inv(m1, m2)
    r2 = 0 if m1 == 1 else mod_inv(m2, m1)
    return r1, r2
