"""Elementary number theory: factorization, Moebius, totient, orders."""

from __future__ import annotations

from functools import lru_cache
from math import gcd, prod
from typing import NamedTuple

from .errors import NotCoprime, NotPrime

# Deterministic for every n < 3.3e24, which covers 2**64.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Factorization(NamedTuple):
    n: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        return prod(p**a for p, a in self.factors)


@lru_cache(maxsize=4096)
def factorize(n: int) -> Factorization:
    """Prime factorization by trial division; ``factorize(1)`` is empty."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    out = []
    m = n
    q = 2
    while q * q <= m:
        if m % q == 0:
            a = 0
            while m % q == 0:
                m //= q
                a += 1
            out.append((q, a))
        q += 1 if q == 2 else 2
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def mobius(n: int) -> int:
    fs = factorize(n).factors
    if any(a > 1 for _, a in fs):
        return 0
    return -1 if len(fs) % 2 else 1


def totient(n: int) -> int:
    result = n
    for p, _ in factorize(n).factors:
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    """All positive divisors of n in ascending order."""
    divs = [1]
    for p, a in factorize(n).factors:
        divs = [d * p**e for d in divs for e in range(a + 1)]
    return sorted(divs)


def prime_power(n: int) -> tuple[int, int] | None:
    """Return (p, alpha) if n = p**alpha with alpha >= 1, else None."""
    fs = factorize(n).factors if n >= 1 else ()
    if len(fs) == 1:
        return fs[0]
    return None


def mult_order(a: int, n: int) -> int:
    """Smallest u >= 1 with a**u == 1 (mod n)."""
    if n < 2:
        raise ValueError(f"mult_order needs n >= 2, got {n}")
    a %= n
    if gcd(a, n) != 1:
        raise NotCoprime(f"gcd({a}, {n}) != 1")
    # The order divides the Carmichael exponent, hence totient(n); strip primes from it.
    u = totient(n)
    for p, _ in factorize(u).factors if u > 1 else ():
        while u % p == 0 and pow(a, u // p, n) == 1:
            u //= p
    return u


def prime_power_split(n: int, p: int) -> tuple[int, int]:
    """Write n = p**k * m with p not dividing m; return (k, m)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1:
        raise ValueError(f"prime_power_split needs n >= 1, got {n}")
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k, n
