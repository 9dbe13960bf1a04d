"""Exact integer utilities: primality, factorization, square-free parts,
Kronecker symbols and class numbers of imaginary quadratic discriminants."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

TRIAL_LIMIT = 10**6
U64 = 1 << 64
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
# extra bases for the (probabilistic) range above 2**64
_MR_EXTRA = (41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class FactorizationError(RuntimeError):
    """Factorization gave up; never returned as a partial answer."""


def primes_up_to(n: int) -> np.ndarray:
    """All primes <= n as an int64 array (sieve of Eratosthenes)."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    sieve[4::2] = False
    for p in range(3, math.isqrt(n) + 1, 2):
        if sieve[p]:
            sieve[p * p :: 2 * p] = False
    return np.flatnonzero(sieve).astype(np.int64)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in primes_up_to(TRIAL_LIMIT))


def _mr_witness(a: int, d: int, s: int, n: int) -> bool:
    """True if `a` proves n composite."""
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 2**64.

    Above 2**64 the answer uses a fixed larger witness set and is only
    probabilistic; see :func:`require_certified` for verdict-critical paths.
    """
    if n < 0:
        raise DomainError("is_prime expects n >= 0")
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    bases = _MR_BASES if n < U64 else _MR_BASES + _MR_EXTRA
    return not any(_mr_witness(a, d, s, n) for a in bases)


def require_certified(n: int) -> None:
    if abs(n) >= U64:
        raise DomainError(f"{n} is outside the certified range |n| < 2**64")


def _pollard_brent(n: int, c: int, max_iter: int) -> int | None:
    """One Brent-cycle run of Pollard rho; returns a factor or None."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
    f = lambda v: (v * v + c) % n  # noqa: E731
    done = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = f(y)
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = f(y)
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        done += r
        if done > max_iter:
            return None
    if g == n:
        g = 1
        while g == 1:
            ys = f(ys)
            g = math.gcd(abs(x - ys), n)
    return g if g != n else None


def _split(n: int, max_iter: int) -> int:
    for c in range(1, 40):
        g = _pollard_brent(n, c, max_iter)
        if g is not None:
            return g
    raise FactorizationError(f"Pollard rho failed to split {n}")


@dataclass(frozen=True)
class Factorization:
    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 0
        for p, e in self.factors:
            if p <= last or e < 1:
                raise ValueError("factors must be strictly increasing primes with e >= 1")
            last = p
            prod *= p**e
        if prod != abs(self.value):
            raise ValueError("factors do not multiply to |value|")

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def divisors(self) -> list[int]:
        divs = [1]
        for p, e in self.factors:
            divs = [d * p**k for d in divs for k in range(e + 1)]
        return sorted(divs)


def factorize(n: int, max_iter: int = 10**7) -> Factorization:
    """Factor |n|: trial division to 10**6, then Pollard rho (Brent).

    Practical reach is |n| < 2**64 (and many larger inputs); on failure a
    FactorizationError is raised rather than returning something unproven.
    """
    if n == 0:
        raise DomainError("cannot factor 0")
    m = abs(n)
    counts: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            counts[p] = e
    stack = [m] if m > 1 else []
    while stack:
        k = stack.pop()
        if is_prime(k):
            counts[k] = counts.get(k, 0) + 1
            continue
        r = math.isqrt(k)
        if r * r == k:
            stack += [r, r]
            continue
        g = _split(k, max_iter)
        stack += [g, k // g]
    return Factorization(n, tuple(sorted(counts.items())))


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for _, e in factorize(n).factors)


def squarefree_part(n: int) -> tuple[int, int]:
    """Return (s, k) with n = s*k**2, s square-free and sign(s) = sign(n)."""
    if n == 0:
        raise DomainError("squarefree_part(0) is undefined")
    s, k = 1, 1
    for p, e in factorize(n).factors:
        k *= p ** (e // 2)
        if e % 2:
            s *= p
    return (s if n > 0 else -s), k


def kronecker(a: int, n: int) -> int:
    """The Kronecker symbol (a|n)."""
    if n == 0:
        return 1 if abs(a) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    v = (n & -n).bit_length() - 1
    n >>= v
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n > 0
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _check_discriminant(D: int) -> None:
    if D >= 0 or D % 4 not in (0, 1):
        raise DomainError(f"{D} is not a negative discriminant")


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive positive-definite forms (a, b, c) of discriminant D."""
    _check_discriminant(D)
    forms = []
    amax = math.isqrt(-D // 3)
    for a in range(1, amax + 1):
        for b in range(-a + 1, a + 1):
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                forms.append((a, b, c))
    return forms


def class_number(D: int) -> int:
    """h(D) by counting reduced primitive forms; vectorised over (a, b)."""
    _check_discriminant(D)
    amax = math.isqrt(-D // 3)
    a = np.arange(1, amax + 1, dtype=np.int64)
    # b ranges over (-a, a]; build the (a, b) grid row-wise
    lengths = 2 * a
    aa = np.repeat(a, lengths)
    start = np.repeat(np.cumsum(lengths) - lengths, lengths)
    bb = np.arange(aa.size, dtype=np.int64) - start - aa + 1
    num = bb * bb - D
    ok = num % (4 * aa) == 0
    aa, bb, num = aa[ok], bb[ok], num[ok]
    cc = num // (4 * aa)
    ok = (cc > aa) | ((cc == aa) & (bb >= 0))
    aa, bb, cc = aa[ok], bb[ok], cc[ok]
    prim = np.gcd(np.gcd(aa, bb), cc) == 1
    return int(prim.sum())


def represent_a2_8b2(p: int) -> tuple[int, int] | None:
    """(a, b) with a, b > 0 and p = a**2 + 8*b**2, or None."""
    b = 1
    while 8 * b * b < p:
        rest = p - 8 * b * b
        a = math.isqrt(rest)
        if a * a == rest:
            return a, b
        b += 1
    return None
