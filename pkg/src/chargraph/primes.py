"""Trial-division arithmetic: factorization, prime sets, prime powers.

Everything downstream works on small integers (at most ~10^8, the square
of a four-digit prime power), so deterministic trial division is exact
and fast enough.  No probabilistic tests, no sieve cache.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic primality check by trial division up to sqrt(n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    r = math.isqrt(n)
    while f <= r:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as (prime, exponent) pairs, ascending by prime."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = 1
        for p, e in self.entries:
            if p <= last:
                raise ValueError(f"primes must be distinct and ascending: {self.entries}")
            if e < 1:
                raise ValueError(f"exponent must be >= 1 in entry {(p, e)}")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            last = p

    def value(self) -> int:
        """Multiply the factorization back out."""
        n = 1
        for p, e in self.entries:
            n *= p**e
        return n

    def primes(self) -> frozenset[int]:
        return frozenset(p for p, _ in self.entries)


def factorize(n: int) -> Factorization:
    """Factor n >= 1 by trial division; n = 1 gives the empty product."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    entries: list[tuple[int, int]] = []
    m = n
    e = 0
    while m % 2 == 0:
        m //= 2
        e += 1
    if e:
        entries.append((2, e))
    d = 3
    while d * d <= m:
        e = 0
        while m % d == 0:
            m //= d
            e += 1
        if e:
            entries.append((d, e))
        d += 2
    if m > 1:
        entries.append((m, 1))
    return Factorization(tuple(entries))


def prime_set(n: int) -> frozenset[int]:
    """The set of prime divisors of n; empty for n = 1."""
    return factorize(n).primes()


def prime_power(q: int) -> tuple[int, int] | None:
    """Decompose q >= 2 as p**f, or return None if q is not a prime power."""
    if q < 2:
        raise ValueError(f"prime_power expects q >= 2, got {q}")
    entries = factorize(q).entries
    if len(entries) != 1:
        return None
    return entries[0]


def first_primes(count: int) -> tuple[int, ...]:
    """The first `count` primes, ascending."""
    if count < 0:
        raise ValueError("count must be >= 0")
    out: list[int] = []
    n = 2
    while len(out) < count:
        if is_prime(n):
            out.append(n)
        n += 1
    return tuple(out)
