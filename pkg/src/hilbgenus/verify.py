"""Independent certification of generator lists.

Square classes of k0* are vectors over F2: valuation parities at a fixed
list of prime ideals plus the signs at the two real places.  Because h(k0)
is odd and N(eps_p) = -1, an element is a square in k0* exactly when its
vector is zero (on a support that contains every prime where it has odd
valuation).  An element beta of k0 is a square in K = k0(sqrt(delta)) iff
beta or delta*beta is a square in k0.

Unramifiedness of K(sqrt(mu))/K is decided place by place in k0: at a
prime P of k0 the extension is unramified above P iff k0_P(sqrt(mu)) is
unramified, or P ramifies in K and k0_P(sqrt(delta*mu)) is unramified.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations

from .errors import NotOdd, ZeroElement
from .fieldcase import CaseProfile, SquareClass, relative_discriminant_K
from .ideals import (
    PrimeIdeal,
    dyadic_primes,
    local_square_class_unramified,
    odd_prime_support,
    primes_above,
    valuation,
)
from .quadfield import QuadElem, embedding_signs, is_square_mod4


class Place(str, Enum):
    POS = "pos_embedding"  # sqrt(p) -> +sqrt(p)
    NEG = "neg_embedding"  # sqrt(p) -> -sqrt(p)


@dataclass(frozen=True)
class ClassVector:
    support: tuple[PrimeIdeal, ...]
    val_parities: tuple[int, ...]
    sign_pos: int
    sign_neg: int

    @property
    def bits(self) -> int:
        out = 0
        for i, b in enumerate(self.val_parities + (self.sign_pos, self.sign_neg)):
            out |= b << i
        return out

    def is_zero(self) -> bool:
        return self.bits == 0


def _as_elem(g: SquareClass | QuadElem | int, p: int) -> QuadElem:
    if isinstance(g, SquareClass):
        return g.element(p)
    if isinstance(g, int):
        return QuadElem.rational(g, p)
    return g


def profile_support(profile: CaseProfile, extra: tuple[QuadElem, ...] = ()
                    ) -> tuple[PrimeIdeal, ...]:
    """Primes above 2, p, the divisors of a, and of the norms of ``extra``."""
    p = profile.p
    qs = {2, p, *profile.odd_primes}
    for x in extra:
        qs.update(odd_prime_support(x))
    out: list[PrimeIdeal] = []
    for q in sorted(qs):
        out.extend(primes_above(q, p))
    return tuple(out)


def square_class_vector(g, profile: CaseProfile,
                        support: tuple[PrimeIdeal, ...] | None = None
                        ) -> ClassVector:
    x = _as_elem(g, profile.p)
    if not x:
        raise ZeroElement("zero has no square class")
    if support is None:
        support = profile_support(profile, (x,))
    parities = tuple(valuation(x, P) % 2 for P in support)
    sp, sn = embedding_signs(x)
    return ClassVector(support, parities, int(sp < 0), int(sn < 0))


# ---------------------------------------------------------------------------
# independence modulo K*^2


@dataclass(frozen=True)
class IndependenceVerdict:
    independent: bool
    witness: tuple[int, ...] = ()
    # True when the witness product is delta times a square rather than a square
    via_delta: bool = False


def independence_check(generators, profile: CaseProfile) -> IndependenceVerdict:
    """Are the generators multiplicatively independent modulo K*^2?"""
    p = profile.p
    elems = [_as_elem(g, p) for g in generators]
    support = profile_support(profile, tuple(elems) + (profile.delta,))
    vecs = [square_class_vector(x, profile, support).bits for x in elems]
    target = square_class_vector(profile.delta, profile, support).bits
    # Gaussian elimination over F2 with pivot on lowest set bit
    basis: dict[int, int] = {}
    dependent = False
    for v in vecs + [target]:
        while v:
            low = v & -v
            if low not in basis:
                basis[low] = v
                break
            v ^= basis[low]
        else:
            dependent = True
            break
    if not dependent:
        return IndependenceVerdict(True)
    for size in range(1, len(vecs) + 1):
        for combo in combinations(range(len(vecs)), size):
            acc = 0
            for i in combo:
                acc ^= vecs[i]
            if acc == 0:
                return IndependenceVerdict(False, combo, False)
            if acc == target:
                return IndependenceVerdict(False, combo, True)
    raise AssertionError("elimination found a dependency that enumeration missed")


# ---------------------------------------------------------------------------
# unramifiedness


def ramifies_in_K(P: PrimeIdeal, profile: CaseProfile) -> bool:
    """Decided from delta directly, independent of the discriminant table."""
    delta = profile.delta
    if P.q == 2:
        return not local_square_class_unramified(delta, P)
    return valuation(delta, P) % 2 == 1


@dataclass(frozen=True)
class UnramifiedVerdict:
    passed: bool
    ideal_square: bool
    dyadic: bool
    # the plain test "mu is a square mod 4 in k0", for reference
    k0_square_mod4: bool | None
    bad_primes: tuple[str, ...] = field(default=())

    @property
    def status(self) -> str:
        return "pass" if self.passed else "fail"


def unramified_check(mu, profile: CaseProfile) -> UnramifiedVerdict:
    """Is K(sqrt(mu))/K unramified at every finite prime?"""
    p = profile.p
    x = _as_elem(mu, p)
    if not x:
        raise ZeroElement("zero generator")
    bad: list[str] = []
    coeff = relative_discriminant_K(profile)
    rel_disc = QuadElem(0, coeff, p)
    for q in odd_prime_support(x):
        if q == 2:
            continue
        for P in primes_above(q, p):
            if valuation(x, P) % 2 and valuation(rel_disc, P) == 0:
                bad.append(str(P))
    ideal_ok = not bad
    dyadic_ok = True
    for P in dyadic_primes(p):
        ok = local_square_class_unramified(x, P)
        if not ok and ramifies_in_K(P, profile):
            ok = local_square_class_unramified(profile.delta * x, P)
        if not ok:
            dyadic_ok = False
            bad.append(str(P))
    try:
        plain = is_square_mod4(x)
    except NotOdd:
        plain = None
    return UnramifiedVerdict(ideal_ok and dyadic_ok, ideal_ok, dyadic_ok, plain,
                             tuple(bad))


# ---------------------------------------------------------------------------
# real places


def hilbert_symbol_real(u, v, place: Place | str) -> int:
    """(u, v) at a real place of k0: -1 iff both are negative there."""
    place = Place(place)
    signs = []
    for w in (u, v):
        if isinstance(w, int):
            if w == 0:
                raise ZeroElement("Hilbert symbol of zero")
            signs.append(1 if w > 0 else -1)
        else:
            signs.append(w.sign(conjugate=place is Place.NEG))
    return -1 if signs[0] < 0 and signs[1] < 0 else 1


def unit_norm_certificate(profile: CaseProfile) -> dict[str, list[int]]:
    """Symbols (u, delta) at both real places for u = -1, eps, -eps.

    Each unit with a -1 somewhere is a local non-norm from K, hence not a
    global norm; all three failing to be norms gives e = 2.
    """
    eps = profile.eps
    units = {"-1": -1, "eps": eps, "-eps": -eps}
    return {
        name: [hilbert_symbol_real(u, profile.delta, pl) for pl in Place]
        for name, u in units.items()
    }


def e_is_two(profile: CaseProfile) -> bool:
    return all(-1 in vals for vals in unit_norm_certificate(profile).values())
