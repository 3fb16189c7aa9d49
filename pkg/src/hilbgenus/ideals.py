"""Prime ideals of k0 = Q(sqrt(p)), valuations, and 2-adic local squares.

A prime ideal is described by the rational prime below it, its splitting
type, and for split primes the residue ``root`` of sqrt(p) modulo the ideal
(mod q for odd q; mod 4 under the 2-adic embedding for q = 2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .arith import legendre, sqrt_mod_2k, sqrt_mod_prime, v_adic
from .errors import PrimitivityViolated, ZeroElement
from .quadfield import QuadElem, Residue4, squares_mod4


@dataclass(frozen=True, order=True)
class PrimeIdeal:
    q: int
    kind: str  # "split", "inert" or "ramified"
    root: int = 0

    def __str__(self):
        if self.kind == "split":
            return f"P({self.q},{self.root})"
        return f"P({self.q})"


def splitting_type(q: int, p: int) -> str:
    if q == p:
        return "ramified"
    if q == 2:
        return "split" if p % 8 == 1 else "inert"
    return "split" if legendre(p, q) == 1 else "inert"


def primes_above(q: int, p: int) -> list[PrimeIdeal]:
    kind = splitting_type(q, p)
    if kind != "split":
        return [PrimeIdeal(q, kind)]
    if q == 2:
        return [PrimeIdeal(2, "split", 1), PrimeIdeal(2, "split", 3)]
    r = sqrt_mod_prime(p, q)
    r = min(r, q - r)
    return [PrimeIdeal(q, "split", r), PrimeIdeal(q, "split", q - r)]


@lru_cache(maxsize=None)
def _two_adic_root(p: int, bits: int) -> int:
    """The square root of p in Z_2 that is 1 mod 4, modulo 2**bits."""
    r = sqrt_mod_2k(p, bits + 2) % (1 << bits)
    if r % 4 != 1:
        r = (-r) % (1 << bits)
    return r


def _embed_2adic(x: QuadElem, root: int, bits: int) -> int:
    """Image of x in Z/2^bits under sqrt(p) -> +r (root 1) or -r (root 3)."""
    r = _two_adic_root(x.p, bits + 1)
    if root == 3:
        r = -r
    mod = 1 << (bits + 1)
    num = (x.s + x.t * r) % mod
    if x.den == 2:
        return (num // 2) % (1 << bits)
    return num % (1 << bits)


def valuation(x: QuadElem, P: PrimeIdeal) -> int:
    if not x:
        raise ZeroElement("valuation of zero")
    n = abs(x.norm())
    if P.kind == "ramified":
        return v_adic(n, P.q)
    if P.kind == "inert":
        return v_adic(n, P.q) // 2
    if P.q == 2:
        bits = v_adic(n, 2) + 4
        img = _embed_2adic(x, P.root, bits)
        return v_adic(img, 2) if img else bits
    c = v_adic(x.content(), P.q) if x.content() else 0
    rest = x.exact_div(P.q**c) if c else x
    vn = v_adic(abs(rest.norm()), P.q)
    if vn == 0:
        return c
    s, t = rest.s, rest.t
    hits = [
        (s + t * r) % P.q == 0 for r in (P.root, P.q - P.root)
    ]
    if hits == [True, False]:
        return c + vn
    if hits == [False, True]:
        return c
    raise PrimitivityViolated(f"{x} has no single conjugate above {P.q}")


def odd_prime_support(x: QuadElem) -> list[int]:
    """Odd rational primes dividing N(x), by trial division."""
    n = abs(x.norm())
    out = []
    while n % 2 == 0:
        n //= 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 2
    if n > 1:
        out.append(n)
    return out


def local_square_class_unramified(x: QuadElem, P: PrimeIdeal) -> bool:
    """Whether k0_P(sqrt(x)) / k0_P is unramified (or trivial), P above 2.

    True iff x is an even power of a uniformizer times a unit that is a
    square modulo 4 in the completion.
    """
    if P.q != 2:
        raise ValueError("only dyadic primes are handled here")
    v = valuation(x, P)
    if v % 2:
        return False
    p = x.p
    if P.kind == "split":
        bits = v + 4
        img = _embed_2adic(x, P.root, bits)
        return (img >> v) % 4 == 1
    if P.kind == "inert":
        c0, c1 = x.omega_coords()
        return Residue4(c0 >> v, c1 >> v, p) in squares_mod4(p)
    # p = 2, uniformizer sqrt(2): divide by 2^(v/2)
    k = v // 2
    return Residue4(x.s >> k, x.t >> k, 2) in squares_mod4(2)


def dyadic_primes(p: int) -> list[PrimeIdeal]:
    return primes_above(2, p)
