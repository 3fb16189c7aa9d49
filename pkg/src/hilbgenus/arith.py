"""Elementary number theory on Python integers."""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .errors import InvalidInput, NotSquarefree

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

# Miller-Rabin with the first 13 primes as bases has no strong pseudoprimes
# below this bound (Sorenson & Webster 2015).
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality test.

    Miller-Rabin over fixed bases below ``MR_DETERMINISTIC_BOUND``; above it
    the answer falls back to trial division, which is exact but slow.
    """
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    if n >= MR_DETERMINISTIC_BOUND:
        return is_prime_trial(n)
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for b in _SMALL_PRIMES:
        x = pow(b, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class PrimeFactorization:
    value: int
    odd_primes: tuple[int, ...]
    has_factor_two: bool

    @property
    def odd_part(self) -> int:
        out = 1
        for q in self.odd_primes:
            out *= q
        return out

    def __iter__(self):
        if self.has_factor_two:
            yield 2
        yield from self.odd_primes


def factor_squarefree(a: int) -> PrimeFactorization:
    """Factor a squarefree ``a`` by trial division; raise if not squarefree."""
    if a < 1:
        raise InvalidInput(f"expected a positive integer, got {a}")
    n = a
    two = False
    if n % 2 == 0:
        n //= 2
        if n % 2 == 0:
            raise NotSquarefree(a)
        two = True
    primes = []
    d = 3
    while d * d <= n:
        if n % d == 0:
            n //= d
            if n % d == 0:
                raise NotSquarefree(a)
            primes.append(d)
        d += 2
    if n > 1:
        primes.append(n)
    return PrimeFactorization(a, tuple(primes), two)


def is_squarefree(a: int) -> bool:
    try:
        factor_squarefree(a)
    except NotSquarefree:
        return False
    return True


def legendre(top: int, q: int) -> int:
    """Legendre symbol (top/q) for an odd prime q, by Euler's criterion."""
    r = pow(top % q, (q - 1) // 2, q)
    if r == 0:
        return 0
    return 1 if r == 1 else -1


def q_star(q: int) -> int:
    """(-1)^((q-1)/2) * q, the twist of q that is 1 mod 4."""
    return q if q % 4 == 1 else -q


def sqrt_mod_prime(n: int, q: int) -> int:
    """A square root of n modulo an odd prime q (Tonelli-Shanks).

    Raises ValueError when n is a non-residue.
    """
    n %= q
    if n == 0:
        return 0
    if legendre(n, q) != 1:
        raise ValueError(f"{n} is not a square mod {q}")
    if q % 4 == 3:
        return pow(n, (q + 1) // 4, q)
    s, e = q - 1, 0
    while s % 2 == 0:
        s //= 2
        e += 1
    z = 2
    while legendre(z, q) != -1:
        z += 1
    m, c, t, r = e, pow(z, s, q), pow(n, s, q), pow(n, (s + 1) // 2, q)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % q
            i += 1
        b = pow(c, 1 << (m - i - 1), q)
        m, c = i, b * b % q
        t, r = t * c % q, r * b % q
    return r


def sqrt_mod_2k(n: int, k: int) -> int:
    """A square root of n = 1 (mod 8) modulo 2**k, by Hensel lifting."""
    if n % 8 != 1:
        raise ValueError("only n = 1 (mod 8) is handled")
    mod = 1 << k
    if k <= 3:
        return 1
    x = 1
    # x^2 = n mod 2^j  ->  lift to 2^(j+1)
    for j in range(3, k):
        if (x * x - n) % (1 << (j + 1)):
            x += 1 << (j - 1)
    return x % mod


def v_adic(n: int, q: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v
