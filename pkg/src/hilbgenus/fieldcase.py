"""Instance resolution for K = Q(sqrt(-a * eps_p * sqrt(p))).

Validates (p, a), splits the odd primes of ``a`` by the Legendre symbol
(p/q), tags the residue case, and derives the discriminant data, ramified
places of K/k0 and the genus field generators.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt

from .arith import PrimeFactorization, factor_squarefree, legendre, q_star
from .errors import InvalidA, MalformedStandardForm, NotSquarefree
from .ideals import PrimeIdeal, primes_above
from .quadfield import (
    QuadElem,
    check_p,
    class_number,
    fundamental_unit,
    lambda_exponent,
)

A_CASES = ("odd_1mod4", "odd_3mod4", "even_core1mod4", "even_core3mod4")
P_CASES = ("p1mod8", "p5mod8", "p_two")

# e in r2 = t - e - 1: -1, eps and -eps are all local non-norms at a real place
UNIT_NORM_INDEX_EXP = 2


@dataclass(frozen=True)
class CaseProfile:
    p: int
    a: int
    factorization: PrimeFactorization
    split_primes: tuple[int, ...]
    inert_primes: tuple[int, ...]
    a_case: str
    p_case: str
    lam: int | None
    h: int
    eps: QuadElem
    delta: QuadElem

    @property
    def n(self) -> int:
        return len(self.factorization.odd_primes)

    @property
    def m(self) -> int:
        return len(self.split_primes)

    @property
    def odd_primes(self) -> tuple[int, ...]:
        return self.factorization.odd_primes


def _a_case(fac: PrimeFactorization) -> str:
    core = fac.odd_part % 4
    if fac.has_factor_two:
        return "even_core1mod4" if core == 1 else "even_core3mod4"
    return "odd_1mod4" if core == 1 else "odd_3mod4"


def _p_case(p: int) -> str:
    if p == 2:
        return "p_two"
    return "p1mod8" if p % 8 == 1 else "p5mod8"


def resolve(p: int, a: int) -> CaseProfile:
    check_p(p)
    if a < 1:
        raise InvalidA("a must be a positive squarefree integer")
    try:
        fac = factor_squarefree(a)
    except NotSquarefree as exc:
        raise InvalidA(f"a={a} is not squarefree") from exc
    if gcd(a, p) != 1:
        raise InvalidA(f"a={a} is not coprime to p={p}")
    if p == 2 and a % 2 == 0:
        raise InvalidA("a must be odd when p = 2")
    split = tuple(q for q in fac.odd_primes if legendre(p, q) == 1)
    inert = tuple(q for q in fac.odd_primes if legendre(p, q) == -1)
    eps = fundamental_unit(p)
    delta = -a * eps * QuadElem.sqrt_p(p)
    prof = CaseProfile(
        p=p,
        a=a,
        factorization=fac,
        split_primes=split,
        inert_primes=inert,
        a_case=_a_case(fac),
        p_case=_p_case(p),
        lam=None if p == 2 else lambda_exponent(p),
        h=class_number(p),
        eps=eps,
        delta=delta,
    )
    if delta.norm() != p * a * a or delta.sign() != -1 or delta.sign(True) != -1:
        raise AssertionError(f"delta={delta} is not totally negative of norm pa^2")
    return prof


# ---------------------------------------------------------------------------
# discriminants


def cyclic_quartic_discriminants(a: int, b: int, d: int) -> tuple[int, int]:
    """Discriminant of L = Q(sqrt(a(d + b sqrt d))) and of L/Q(sqrt d).

    Returns ``(disc_L, coeff)`` where the relative discriminant is generated
    by ``coeff * sqrt(d)``.
    """
    if b <= 0 or d <= 1:
        raise MalformedStandardForm("need b > 0 and d > 1")
    c2 = d - b * b
    c = isqrt(c2) if c2 > 0 else 0
    if c <= 0 or c * c != c2:
        raise MalformedStandardForm(f"{d} - {b}^2 is not a positive square")
    if a % 2 == 0 or gcd(a, d) != 1:
        raise MalformedStandardForm("a must be odd and coprime to d")
    for n in (abs(a), d):
        try:
            factor_squarefree(n)
        except NotSquarefree as exc:
            raise MalformedStandardForm(f"{n} is not squarefree") from exc
    a2d3 = a * a * d**3
    if d % 2 == 0:
        return 2**8 * a2d3, 4 * a
    if d % 4 != 1:
        raise MalformedStandardForm("a sum of two coprime squares is 1 or 2 mod 4")
    if b % 2 == 1:
        return 2**6 * a2d3, 8 * a
    if (a + b) % 4 == 3:
        return 2**4 * a2d3, 4 * a
    return a2d3, a


def relative_discriminant_K(profile: CaseProfile) -> int:
    """Coefficient c with disc(K/k0) generated by c*sqrt(p)."""
    p, a = profile.p, profile.a
    if p == 2:
        return 4 * a
    if p % 8 == 5:
        return a if profile.a_case == "odd_1mod4" else 4 * a
    return a if profile.a_case == "odd_3mod4" else 4 * a


# ---------------------------------------------------------------------------
# ramification


@dataclass(frozen=True)
class RamifiedPrime:
    q: int
    splitting: str
    ramified_count: int
    ideals: tuple[PrimeIdeal, ...] = field(default=())


@dataclass(frozen=True)
class RamifiedInventory:
    finite_primes: tuple[RamifiedPrime, ...]
    infinite_count: int
    t: int

    def ideals(self) -> list[PrimeIdeal]:
        return [P for rp in self.finite_primes for P in rp.ideals]


def ramified_inventory(profile: CaseProfile) -> RamifiedInventory:
    p = profile.p
    out = []
    for q in profile.odd_primes:
        ideals = tuple(primes_above(q, p))
        out.append(RamifiedPrime(q, ideals[0].kind, len(ideals), ideals))
    if p != 2:
        root_p = tuple(primes_above(p, p))
        out.append(RamifiedPrime(p, "ramified", 1, root_p))
        if relative_discriminant_K(profile) % 4 == 0:
            ideals = tuple(primes_above(2, p))
            out.append(RamifiedPrime(2, ideals[0].kind, len(ideals), ideals))
    else:
        root_2 = tuple(primes_above(2, 2))
        out.append(RamifiedPrime(2, "ramified", 1, root_2))
    out.sort(key=lambda rp: rp.q)
    finite = sum(rp.ramified_count for rp in out)
    return RamifiedInventory(tuple(out), 2, finite + 2)


# ---------------------------------------------------------------------------
# genus field


@dataclass(frozen=True)
class SquareClass:
    """A generator sqrt(payload) adjoined to K.

    ``payload`` is an int for rational generators and a QuadElem otherwise.
    """

    payload: int | QuadElem
    kind: str  # "q_star", "alpha_star", "pi_star", "unit_eps", "sign_unit"
    source_q: int | None = None

    def element(self, p: int) -> QuadElem:
        if isinstance(self.payload, QuadElem):
            return self.payload
        return QuadElem.rational(self.payload, p)

    def display(self) -> str:
        if isinstance(self.payload, QuadElem):
            return self.payload.display()
        return str(self.payload)

    def tex(self) -> str:
        if isinstance(self.payload, QuadElem):
            return self.payload.tex()
        return str(self.payload)


def unit_like_generator(profile: CaseProfile, a_case: str | None = None
                        ) -> int | None:
    """The -1 / 2 / -2 generator of the genus field, if the case has one."""
    case = a_case or profile.a_case
    if profile.p_case == "p_two":
        return None
    table = {
        "p5mod8": {
            "odd_1mod4": None,
            "odd_3mod4": -1,
            "even_core1mod4": 2,
            "even_core3mod4": -2,
        },
        "p1mod8": {
            "odd_3mod4": None,
            "odd_1mod4": -1,
            "even_core1mod4": -2,
            "even_core3mod4": 2,
        },
    }
    return table[profile.p_case][case]


def genus_field(profile: CaseProfile, a_case: str | None = None
                ) -> list[SquareClass]:
    """Generators of the genus field over K: unit-like first, then q* by q."""
    out = []
    unit = unit_like_generator(profile, a_case)
    if unit is not None:
        out.append(SquareClass(unit, "sign_unit"))
    for q in profile.odd_primes:
        out.append(SquareClass(q_star(q), "q_star", q))
    return out
