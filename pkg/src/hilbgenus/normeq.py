"""Norm equations x^2 - p*y^2 = q^k over Z[sqrt(p)].

The solver finds a small element of norm +-q^k in the maximal order, moves
it into Z[sqrt(p)] with a power of eps_p, then walks the orbit of the
norm-one unit to the member with least |y|.  A plain ascending-y scan up to
Nagell's bound (every class of solutions of x^2 - D*y^2 = N > 0 has a member
with y <= v*sqrt(N)/sqrt(2*(u+1)), u + v*sqrt(D) of norm +1) is kept as
an oracle; it is exact but hopeless when eps_p^3 is large.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator

from .arith import is_prime, legendre
from .errors import InvalidInput, NotRepresentable, NotSplit, SearchExhausted
from .quadfield import QuadElem, check_p, fundamental_unit


@dataclass(frozen=True)
class NormSolution:
    q: int
    x: int
    y: int
    k: int
    p: int

    @property
    def alpha(self) -> QuadElem:
        return QuadElem(self.x, self.y, self.p)

    def check(self) -> None:
        if self.x * self.x - self.p * self.y * self.y != self.q**self.k:
            raise AssertionError(f"{self} does not solve its equation")


@lru_cache(maxsize=None)
def _norm_one_unit(p: int) -> tuple[int, int]:
    """(u, v) with u + v*sqrt(p) the smallest unit of norm +1 in Z[sqrt(p)]."""
    eps = fundamental_unit(p)
    e = eps
    while e.den != 1 or e.norm() != 1:
        e = e * eps
    return e.s, e.t


def nagell_bound(p: int, n: int, unit: tuple[int, int] | None = None) -> int:
    u, v = unit or _norm_one_unit(p)
    return isqrt(v * v * n // (2 * (u + 1))) + 1


def iter_solutions(p: int, n: int, bound: int, prime: int | None = None
                   ) -> Iterator[tuple[int, int]]:
    """Nonnegative (x, y) with x^2 - p*y^2 = n and y <= bound, ascending y.

    With ``prime`` given, solutions where both x and y are multiples of it
    are skipped (they generate a non-prime-power ideal).
    """
    for y in range(bound + 1):
        x2 = n + p * y * y
        x = isqrt(x2)
        if x * x != x2:
            continue
        if prime is not None and gcd(x, y) % prime == 0:
            continue
        yield x, y


def _parity_ok(sol: NormSolution) -> bool:
    if sol.q % 4 == 1:
        return sol.x % 2 == 1 and sol.y % 2 == 0
    return sol.x % 2 == 0 and sol.y % 2 == 1


def _ceil_real(u: QuadElem) -> int:
    """An integer upper bound for the real number u > 0."""
    root = isqrt(u.p * u.t * u.t) + 1
    return (u.s + root) // u.den + 1


def find_norm_element(p: int, n: int, prime: int) -> QuadElem | None:
    """An integer of k0 with norm +-n, not divisible by ``prime``.

    Every orbit under the fundamental unit has a member whose conjugates are
    both at most sqrt(n*eps) in absolute value, so writing it as
    (X + Y*sqrt(p))/2 gives |Y| <= 2*sqrt(n*eps/p).  None if no such element.
    """
    eps_ceil = _ceil_real(fundamental_unit(p))
    bound = isqrt(4 * n * eps_ceil // p) + 2
    for Y in range(bound + 1):
        for N in (4 * n, -4 * n):
            X2 = N + p * Y * Y
            if X2 < 0:
                continue
            X = isqrt(X2)
            if X * X != X2 or (X - Y) % 2:
                continue
            beta = QuadElem(X, Y, p, 2)
            if beta.content() % prime:
                return beta
    return None


def _into_order(beta: QuadElem, target: int) -> QuadElem | None:
    """beta * eps^j lying in Z[sqrt(p)] with norm ``target``, if any."""
    eps = fundamental_unit(beta.p)
    cur = beta
    for _ in range(6):
        if cur.den == 1 and cur.norm() == target:
            return cur
        cur = cur * eps
    return None


def _min_y_in_orbit(alpha: QuadElem) -> list[QuadElem]:
    """alpha * eta^i for the i minimising |y|, eta the norm-one unit of Z[sqrt p].

    |y| along the orbit is unimodal in i, so walk downhill from i = 0; the
    two neighbours are returned as well to settle ties.
    """
    u, v = _norm_one_unit(alpha.p)
    eta = QuadElem(u, v, alpha.p)
    eta_inv = eta.conj()
    best = alpha
    for step in (eta, eta_inv):
        cur = best * step
        while abs(cur.t) < abs(best.t):
            best, cur = cur, cur * step
    return [best, best * eta, best * eta_inv]


def _normalized(e: QuadElem) -> tuple[int, int]:
    return abs(e.s), abs(e.t)


def solve_norm_equation(p: int, q: int, lam_h: int, strict: bool = False,
                        pick: int = 0) -> NormSolution:
    """Solve x^2 - p*y^2 = q^k for the least odd k <= lam_h that admits it.

    The solution returned generates a k-th power of a prime above q and has
    the least y >= 0 (then least x).  ``strict`` forces k = lam_h.  ``pick``
    moves ``pick`` steps along the norm-one unit orbit instead; it exists
    for tie-break experiments.
    """
    check_p(p)
    if p == 2:
        raise InvalidInput("use solve_two_rep for p = 2")
    if q == p or q % 2 == 0 or not is_prime(q):
        raise InvalidInput(f"q={q} must be an odd prime different from p")
    if legendre(p, q) != 1:
        raise NotSplit(f"({p}/{q}) != 1")
    if lam_h < 1 or lam_h % 2 == 0:
        raise InvalidInput("the exponent bound must be odd and positive")
    exponents = [lam_h] if strict else range(1, lam_h + 1, 2)
    for k in exponents:
        n = q**k
        beta = find_norm_element(p, n, q)
        if beta is None:
            continue
        alpha = _into_order(beta, n)
        if alpha is None:
            continue
        near = [_normalized(e) for e in _min_y_in_orbit(alpha)]
        y_min = min(y for _, y in near)
        x, y = min(c for c in near if c[1] == y_min)
        if pick:
            u, v = _norm_one_unit(p)
            e = QuadElem(x, y, p) * QuadElem(u, v, p) ** pick
            x, y = _normalized(e)
        sol = NormSolution(q, x, y, k, p)
        sol.check()
        if not _parity_ok(sol):
            raise AssertionError(f"parity law broken by {sol}")
        return sol
    raise SearchExhausted(f"x^2 - {p}y^2 = {q}^k unsolved for odd k <= {lam_h}")


def solve_norm_equation_bruteforce(p: int, q: int, k: int) -> NormSolution | None:
    """Least-y primitive solution by scanning y up to the Nagell bound."""
    n = q**k
    for x, y in iter_solutions(p, n, nagell_bound(p, n), prime=q):
        return NormSolution(q, x, y, k, p)
    return None


def solve_two_rep(q: int, pick: int = 0) -> NormSolution:
    """Positive x, y with q = x^2 - 2y^2; y = 0 (mod 4) when q = 1 (mod 8).

    ``pick`` moves that many steps along the orbit of the norm-one unit that
    preserves the side condition (17+12*sqrt(2) or 3+2*sqrt(2)).
    """
    if q % 8 not in (1, 7) or not is_prime(q):
        raise NotRepresentable(f"{q} is not a prime ≡ ±1 (mod 8)")
    # bound from the square of the norm-one unit, so the y = 0 (mod 4)
    # member of each orbit is reached too
    bound = nagell_bound(2, q, unit=(17, 12))
    for x, y in iter_solutions(2, q, bound):
        if y == 0 or (q % 8 == 1 and y % 4):
            continue
        if pick:
            eta = QuadElem(17, 12, 2) if q % 8 == 1 else QuadElem(3, 2, 2)
            x, y = _normalized(QuadElem(x, y, 2) * eta**pick)
        sol = NormSolution(q, x, y, 1, 2)
        sol.check()
        return sol
    raise SearchExhausted(f"{q} = x^2 - 2y^2 not found below y = {bound}")
