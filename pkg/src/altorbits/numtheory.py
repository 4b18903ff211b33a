"""Exact integer number theory: valuations, orders, Legendre symbols, CRT.

All functions work on Python ints, so moduli and CRT products may exceed
64 bits.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class NumberTheoryError(ValueError):
    pass


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, m in self.factors:
            if p <= last or m < 1:
                raise NumberTheoryError(f"malformed factorization {self.factors}")
            prod *= p**m
            last = p
        if prod != self.n:
            raise NumberTheoryError(f"factors multiply to {prod}, not {self.n}")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def __str__(self):
        if not self.factors:
            return "1"
        return "·".join(f"{p}^{m}" if m > 1 else str(p) for p, m in self.factors)


@dataclass(frozen=True)
class NegOneWitness:
    """Solvability of ``2**k ≡ -1 (mod n)``.

    ``k_min`` is the least nonnegative solution; every solution has the same
    2-adic valuation, recorded as ``two_adic_of_k``.
    """

    n: int
    exists: bool
    k_min: int | None = None
    two_adic_of_k: int | None = None


def v2(n: int) -> int:
    """2-adic valuation of a positive integer."""
    if n < 1:
        raise NumberTheoryError(f"v2 needs n >= 1, got {n}")
    return (n & -n).bit_length() - 1


def odd_part(n: int) -> int:
    return n >> v2(n)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    i = 5
    while i * i <= n:
        if n % i == 0 or n % (i + 2) == 0:
            return False
        i += 6
    return True


def factorize(n: int) -> Factorization:
    """Prime factorization by trial division."""
    if n < 1:
        raise NumberTheoryError(f"cannot factor {n}")
    m = n
    out = []
    e = v2(m)
    if e:
        out.append((2, e))
        m >>= e
    p = 3
    while p * p <= m:
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
        p += 2
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def mult_order(base: int, n: int) -> int:
    """Least m >= 1 with base**m ≡ 1 (mod n), found by direct iteration."""
    if n < 2:
        raise NumberTheoryError(f"modulus must be >= 2, got {n}")
    if math.gcd(base, n) != 1:
        raise NumberTheoryError(f"gcd({base}, {n}) != 1, order undefined")
    b = base % n
    x = b
    m = 1
    while x != 1 % n:
        x = x * b % n
        m += 1
    return m


@lru_cache(maxsize=8192)
def neg_one_exponent(n: int) -> NegOneWitness:
    """Decide whether 2**k ≡ -1 (mod n) has a solution, for odd n >= 3.

    Walks the powers of 2 through one full period. A solution exists exactly
    when the order is even and the half-period power is -1; the least
    solution is then half the order.
    """
    if n < 3 or n % 2 == 0:
        raise NumberTheoryError(f"need odd n >= 3, got {n}")
    order = mult_order(2, n)
    if order % 2 == 0 and pow(2, order // 2, n) == n - 1:
        k = order // 2
        return NegOneWitness(n, True, k, v2(k))
    return NegOneWitness(n, False)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise NumberTheoryError(f"{p} is not an odd prime")
    if a % p == 0:
        raise NumberTheoryError(f"{p} divides {a}")
    e = pow(a, (p - 1) // 2, p)
    return 1 if e == 1 else -1


def crt(congruences) -> int:
    """Least nonnegative x with x ≡ a_i (mod n_i) for pairwise coprime n_i."""
    congruences = [(int(a), int(m)) for a, m in congruences]
    if not congruences:
        raise NumberTheoryError("empty system")
    for idx, (_, m) in enumerate(congruences):
        if m < 1:
            raise NumberTheoryError(f"bad modulus {m}")
        for _, m2 in congruences[idx + 1:]:
            if math.gcd(m, m2) != 1:
                raise NumberTheoryError(f"moduli {m} and {m2} are not coprime")
    modulus = math.prod(m for _, m in congruences)
    x = 0
    for a, m in congruences:
        rest = modulus // m
        x += a * rest * pow(rest, -1, m)
    return x % modulus


def primes_in_class(count: int, residue: int, modulus: int, min_exclusive: int = 0,
                    ceiling: int = 10**8) -> list[int]:
    """The ``count`` smallest primes p > min_exclusive with p ≡ residue (mod modulus)."""
    if count < 1:
        raise NumberTheoryError("count must be positive")
    if math.gcd(residue, modulus) != 1:
        raise NumberTheoryError(f"gcd({residue}, {modulus}) != 1: no primes to find")
    start = min_exclusive + 1
    p = start + (residue - start) % modulus
    found = []
    while len(found) < count:
        if p > ceiling:
            raise NumberTheoryError(f"prime search passed ceiling {ceiling}")
        if is_prime(p):
            found.append(p)
        p += modulus
    return found
