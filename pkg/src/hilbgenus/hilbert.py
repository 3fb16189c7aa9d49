"""Generators of the Hilbert genus field E of K over K."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InvalidInput, NormalizationFailed
from .fieldcase import (
    A_CASES,
    UNIT_NORM_INDEX_EXP,
    CaseProfile,
    SquareClass,
    genus_field,
    ramified_inventory,
)
from .ideals import dyadic_primes, valuation
from .normeq import NormSolution, find_norm_element, solve_norm_equation, solve_two_rep
from .quadfield import QuadElem, is_square_mod4
from .verify import (
    e_is_two,
    independence_check,
    profile_support,
    square_class_vector,
    unramified_check,
    unit_norm_certificate,
)


def _sign_from_exponent(n: int) -> int:
    return -1 if n % 2 else 1


def alpha_star(p: int, q: int, sol: NormSolution, eps: QuadElem) -> SquareClass:
    """Sign/unit normalisation of alpha = x + y*sqrt(p) for a split prime q."""
    x, y = sol.x, sol.y
    alpha = QuadElem(x, y, p)
    if p != 2:
        out = _sign_from_exponent((x + y - 1) // 2) * alpha
        if q % 4 == 3:
            out = out * QuadElem.sqrt_p(p)
        return SquareClass(out, "alpha_star", q)
    if q % 8 == 1:
        out = _sign_from_exponent((x - 1) // 2) * alpha
    elif x % 4 in (1, 3) and y % 4 == 3:
        out = -(eps * alpha)
    else:
        out = eps * alpha
    if not is_square_mod4(out):
        hits = [c for c in (alpha, -alpha, eps * alpha, -(eps * alpha))
                if is_square_mod4(c)]
        if len(hits) != 1:
            raise NormalizationFailed(
                f"no unique square mod 4 among the unit multiples of {alpha}"
            )
        out = hits[0]
    return SquareClass(out, "alpha_star", q)


def predicted_rank(profile: CaseProfile, a_case: str | None = None) -> int:
    n, m = profile.n, profile.m
    case = a_case or profile.a_case
    if profile.p_case == "p_two":
        return n + m
    if profile.p_case == "p5mod8":
        return n + m if case == "odd_1mod4" else n + m + 1
    return n + m if case == "odd_3mod4" else n + m + 2


def includes_eps(profile: CaseProfile, a_case: str | None = None) -> bool:
    """Whether the case has a generator beyond q*, alpha* and the sign unit."""
    case = a_case or profile.a_case
    return profile.p_case == "p1mod8" and case != "odd_3mod4"


def dyadic_generator(profile: CaseProfile) -> QuadElem:
    """A generator of the least odd power of the first prime above 2 that is
    principal (p = 1 mod 8, so 2 splits in k0)."""
    p = profile.p
    P = dyadic_primes(p)[0]
    for k in range(1, profile.h + 1, 2):
        beta = find_norm_element(p, 2**k, 2)
        if beta is None:
            continue
        if valuation(beta, P) == 0:
            beta = beta.conj()
        return beta
    raise NormalizationFailed(f"no odd power of {P} below h={profile.h} is principal")


def pi_star(profile: CaseProfile) -> SquareClass:
    """The unit multiple of the dyadic generator that is unramified over K.

    When a is even both primes above 2 ramify in K and eps_p is 1 mod 4 at
    one of them and 3 mod 4 at the other, so K(sqrt(eps_p))/K ramifies above
    2.  Its slot is filled by pi*eta, eta in {1, -1, eps, -eps}: exactly one
    of these four classes is unramified.
    """
    pi = dyadic_generator(profile)
    eps = profile.eps
    hits = [c for c in (pi, -pi, eps * pi, -(eps * pi))
            if unramified_check(c, profile).passed]
    if len(hits) != 1:
        raise NormalizationFailed(
            f"{len(hits)} unramified unit multiples of {pi}, expected one"
        )
    return SquareClass(hits[0], "pi_star", 2)


def eps_slot(profile: CaseProfile, a_case: str, keep_eps: bool = False
             ) -> SquareClass | None:
    """The extra generator of the p = 1 (mod 8) cases with a unit slot."""
    if not includes_eps(profile, a_case):
        return None
    if keep_eps or a_case.startswith("odd"):
        return SquareClass(profile.eps, "unit_eps")
    if profile.factorization.has_factor_two:
        return pi_star(profile)
    # a case override claims a is even while it is odd: keep the printed unit
    return SquareClass(profile.eps, "unit_eps")


@dataclass
class HilbertGenusReport:
    profile: CaseProfile
    a_case: str
    genus_generators: list[SquareClass]
    hilbert_generators: list[SquareClass]
    solutions: list[NormSolution]
    t: int
    e: int
    rank: int
    case_override: str | None = None
    keep_eps: bool = False
    verification: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        v = self.verification
        return bool(v) and all((
            all(u.passed for u in v["unramified"]),
            v["independence"].independent,
            v["rank_formula"],
            v["genus_contained"],
            v["e_is_two"],
        ))


def genus_contained(genus: list[SquareClass], gens: list[SquareClass],
                    profile: CaseProfile) -> bool:
    """Each genus generator lies in the F2 span of ``gens`` together with delta."""
    p = profile.p
    elems = [g.element(p) for g in gens] + [profile.delta]
    support = profile_support(profile, tuple(elems + [g.element(p) for g in genus]))
    basis: dict[int, int] = {}
    for x in elems:
        v = square_class_vector(x, profile, support).bits
        while v:
            low = v & -v
            if low not in basis:
                basis[low] = v
                break
            v ^= basis[low]
    for g in genus:
        v = square_class_vector(g, profile, support).bits
        while v:
            low = v & -v
            if low not in basis:
                return False
            v ^= basis[low]
    return True


def verify_report(report: HilbertGenusReport) -> dict:
    profile = report.profile
    gens = report.hilbert_generators
    return {
        "unramified": [unramified_check(g, profile) for g in gens],
        "independence": independence_check(gens, profile),
        "rank_formula": report.rank == report.t - report.e - 1
        and report.rank == predicted_rank(profile, report.a_case),
        "genus_contained": genus_contained(report.genus_generators, gens, profile),
        "e_is_two": e_is_two(profile),
        "unit_norm_symbols": unit_norm_certificate(profile),
    }


def hilbert_genus(profile: CaseProfile, case_override: str | None = None,
                  full_exponent: bool = False, keep_eps: bool = False,
                  verify: bool = True) -> HilbertGenusReport:
    """Generators of E over K, with the certification verdicts attached.

    ``keep_eps`` keeps eps_p in the p = 1 (mod 8), a even cases, where
    it is in fact ramified above 2; the default substitutes ``pi_star``.
    """
    if case_override is not None and case_override not in A_CASES:
        raise InvalidInput(f"unknown case {case_override!r}; one of {A_CASES}")
    case = case_override or profile.a_case
    p = profile.p
    genus = genus_field(profile, case)
    sols: list[NormSolution] = []
    alphas: list[SquareClass] = []
    for q in profile.split_primes:
        if p == 2:
            sol = solve_two_rep(q)
        else:
            sol = solve_norm_equation(p, q, profile.lam * profile.h,
                                      strict=full_exponent)
        sols.append(sol)
        alphas.append(alpha_star(p, q, sol, profile.eps))
    gens = list(genus) + alphas
    extra = eps_slot(profile, case, keep_eps)
    if extra is not None:
        gens.append(extra)
    inv = ramified_inventory(profile)
    report = HilbertGenusReport(
        profile=profile,
        a_case=case,
        genus_generators=genus,
        hilbert_generators=gens,
        solutions=sols,
        t=inv.t,
        e=UNIT_NORM_INDEX_EXP,
        rank=len(gens),
        case_override=case_override,
        keep_eps=keep_eps,
    )
    if verify:
        report.verification = verify_report(report)
    return report
