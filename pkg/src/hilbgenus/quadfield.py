"""Exact arithmetic in k0 = Q(sqrt(p)) for p = 2 or a prime p = 1 (mod 4).

Elements of the ring of integers are stored as ``(s + t*sqrt(p)) / den`` with
``den`` in {1, 2}; ``den == 2`` only occurs for p = 1 (mod 4) with s, t odd.
Residues modulo 4 are taken in the integral basis {1, w}, where
w = (1 + sqrt(p))/2 for p = 1 (mod 4) and w = sqrt(2) for p = 2.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, log, pi, sin

from .arith import is_prime
from .errors import (
    CapExhausted,
    InvalidP,
    MismatchedField,
    NotIntegral,
    NotOdd,
    ZeroElement,
)

DEFAULT_CF_CAP = 10**6


def check_p(p: int) -> int:
    if not (p == 2 or (p % 4 == 1 and is_prime(p))):
        raise InvalidP("p must be 2 or a prime ≡ 1 (mod 4)")
    return p


@dataclass(frozen=True)
class QuadElem:
    s: int
    t: int
    p: int
    den: int = 1

    def __post_init__(self):
        s, t, den = self.s, self.t, self.den
        if den not in (1, 2):
            raise NotIntegral(f"denominator {den} not in {{1, 2}}")
        if den == 2 and s % 2 == 0 and t % 2 == 0:
            s, t, den = s // 2, t // 2, 1
            object.__setattr__(self, "s", s)
            object.__setattr__(self, "t", t)
            object.__setattr__(self, "den", 1)
        if den == 2 and (self.p % 4 != 1 or (s - t) % 2):
            raise NotIntegral(
                f"({s}+{t}*sqrt({self.p}))/2 is not an algebraic integer"
            )

    # construction helpers

    @classmethod
    def rational(cls, n: int, p: int) -> QuadElem:
        return cls(n, 0, p)

    @classmethod
    def sqrt_p(cls, p: int) -> QuadElem:
        return cls(0, 1, p)

    @classmethod
    def from_omega(cls, c0: int, c1: int, p: int) -> QuadElem:
        """c0 + c1*w in the integral basis."""
        if p == 2:
            return cls(c0, c1, p)
        return cls(2 * c0 + c1, c1, p, 2)

    def omega_coords(self) -> tuple[int, int]:
        if self.p == 2:
            return self.s, self.t
        if self.den == 1:
            return self.s - self.t, 2 * self.t
        return (self.s - self.t) // 2, self.t

    def _coerce(self, other) -> QuadElem:
        if isinstance(other, QuadElem):
            if other.p != self.p:
                raise MismatchedField(f"sqrt({self.p}) vs sqrt({other.p})")
            return other
        if isinstance(other, int):
            return QuadElem(other, 0, self.p)
        return NotImplemented

    # ring operations

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if self.den == o.den:
            return QuadElem(self.s + o.s, self.t + o.t, self.p, self.den)
        a, b = (self, o) if self.den == 2 else (o, self)
        return QuadElem(a.s + 2 * b.s, a.t + 2 * b.t, self.p, 2)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.s, -self.t, self.p, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        s = self.s * o.s + self.p * self.t * o.t
        t = self.s * o.t + self.t * o.s
        den = self.den * o.den
        if den == 4:
            if s % 2 or t % 2:
                raise NotIntegral("product left the ring of integers")
            s, t, den = s // 2, t // 2, 2
        return QuadElem(s, t, self.p, den)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if abs(self.norm()) != 1:
                raise NotIntegral("negative power of a non-unit")
            return self.unit_inverse() ** (-k)
        out = QuadElem(1, 0, self.p)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return self.s != 0 or self.t != 0

    def conj(self) -> QuadElem:
        return QuadElem(self.s, -self.t, self.p, self.den)

    def norm(self) -> int:
        num = self.s * self.s - self.p * self.t * self.t
        return num // (self.den * self.den)

    def trace(self) -> int:
        return 2 * self.s // self.den

    def unit_inverse(self) -> QuadElem:
        n = self.norm()
        if n not in (1, -1):
            raise NotIntegral(f"{self} is not a unit")
        return self.conj() * n

    def exact_div(self, n: int) -> QuadElem:
        """self / n, which must again be an algebraic integer."""
        c0, c1 = self.omega_coords()
        if c0 % n or c1 % n:
            raise NotIntegral(f"{self} is not divisible by {n}")
        return QuadElem.from_omega(c0 // n, c1 // n, self.p)

    def content(self) -> int:
        """Largest rational integer dividing self in the ring of integers."""
        c0, c1 = self.omega_coords()
        return gcd(c0, c1)

    def is_rational(self) -> bool:
        return self.t == 0

    # real embeddings

    def sign(self, conjugate: bool = False) -> int:
        """Sign of the real number (s + t*sqrt(p))/den, or of its conjugate."""
        s, t = self.s, (-self.t if conjugate else self.t)
        if not self:
            raise ZeroElement("sign of zero")
        if s >= 0 and t >= 0:
            return 1
        if s <= 0 and t <= 0:
            return -1
        if s * s > self.p * t * t:
            return 1 if s > 0 else -1
        return 1 if t > 0 else -1

    def __float__(self):
        return (self.s + self.t * self.p**0.5) / self.den

    # text forms

    def _plain(self, s: int, t: int) -> str:
        if t == 0:
            return str(s)
        coeff = {1: "", -1: "-"}.get(t, f"{t}*")
        root = f"{coeff}sqrt({self.p})"
        if s == 0:
            return root
        return f"{s}{'' if t < 0 else '+'}{root}"

    def __str__(self):
        body = self._plain(self.s, self.t)
        if self.den == 2:
            return f"({body})/2"
        return body

    def display(self) -> str:
        """Like str(), but an overall minus sign is pulled out front."""
        if self.s <= 0 and self.t <= 0 and self.s and self.t:
            inner = self._plain(-self.s, -self.t)
            return f"-({inner})/2" if self.den == 2 else f"-({inner})"
        return str(self)

    def tex(self) -> str:
        neg = self.s <= 0 and self.t <= 0 and self.s and self.t
        s, t = (-self.s, -self.t) if neg else (self.s, self.t)
        if t == 0:
            body = str(s)
        else:
            coeff = {1: "", -1: "-"}.get(t, str(t))
            root = f"{coeff}\\sqrt{{{self.p}}}"
            body = root if s == 0 else f"{s}{'' if t < 0 else '+'}{root}"
        if self.den == 2:
            body = f"\\frac{{{body}}}{{2}}"
        return f"-({body})" if neg else body

    @classmethod
    def parse(cls, text: str, p: int | None = None) -> QuadElem:
        """Inverse of str() and display()."""
        txt = text.replace(" ", "")
        negate, den = False, 1
        for pattern, neg, d in (
            (r"-\((.+)\)/2", True, 2),
            (r"\((.+)\)/2", False, 2),
            (r"-\((.+)\)", True, 1),
        ):
            m = re.fullmatch(pattern, txt)
            if m:
                txt, negate, den = m.group(1), neg, d
                break
        m = re.fullmatch(
            r"(?P<s>[+-]?\d+)?(?:(?P<t>[+-]?\d*)\*?sqrt\((?P<p>\d+)\))?", txt
        )
        if not m or not txt:
            raise ValueError(f"cannot parse {text!r}")
        s = int(m.group("s") or 0)
        if m.group("p") is None:
            t, q = 0, p
        else:
            tt = m.group("t")
            t = int(tt + "1") if tt in ("", "+", "-") else int(tt)
            q = int(m.group("p"))
            if p is not None and q != p:
                raise MismatchedField(f"sqrt({q}) in a string for p={p}")
        if q is None:
            raise ValueError("p is needed to parse a rational element")
        out = cls(s, t, q, den)
        return -out if negate else out


def embedding_signs(u: QuadElem) -> tuple[int, int]:
    """Signs of u under sqrt(p) -> +sqrt(p) and sqrt(p) -> -sqrt(p)."""
    return u.sign(), u.sign(conjugate=True)


# ---------------------------------------------------------------------------
# fundamental unit


def _cf_unit(P: int, Q: int, D: int, p: int, cap: int) -> QuadElem:
    """First convergent h/k of (P + sqrt(D))/Q giving a unit h - k*conj(theta)."""
    r = isqrt(D)
    h_prev, h = 1, 0
    k_prev, k = 0, 1
    for _ in range(cap):
        a = (P + r) // Q
        h_prev, h = a * h_prev + h, h_prev
        k_prev, k = a * k_prev + k, k_prev
        # candidate h_prev - k_prev * conj(theta), theta = (P0 + sqrt(D))/Q0
        cand = _conv_elem(h_prev, k_prev, p)
        if abs(cand.norm()) == 1:
            return cand
        P = a * Q - P
        Q = (D - P * P) // Q
    raise CapExhausted(f"no unit within {cap} continued-fraction steps")


def _conv_elem(h: int, k: int, p: int) -> QuadElem:
    if p == 2:
        # theta = sqrt(2): h - k*(-sqrt 2)
        return QuadElem(h, k, 2)
    # theta = (1+sqrt p)/2: h - k*(1 - sqrt p)/2 = (2h - k + k sqrt p)/2
    return QuadElem(2 * h - k, k, p, 2)


@lru_cache(maxsize=None)
def fundamental_unit(p: int, cap: int = DEFAULT_CF_CAP) -> QuadElem:
    """Fundamental unit > 1 of the ring of integers of Q(sqrt(p))."""
    check_p(p)
    if p == 2:
        return _cf_unit(0, 1, 2, 2, cap)
    return _cf_unit(1, 2, p, p, cap)


# ---------------------------------------------------------------------------
# class number by reduced indefinite forms


def field_discriminant(p: int) -> int:
    return 8 if p == 2 else p


def _is_reduced(form: tuple[int, int, int], D: int) -> bool:
    a, b, c = form
    a2 = 2 * abs(a)
    if b <= 0 or b * b >= D:
        return False
    lo = a2 + b  # sqrt(D) - b < 2|a|
    hi = a2 - b  # 2|a| < sqrt(D) + b
    return lo * lo > D and (hi < 0 or hi * hi < D)


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """All reduced primitive forms (a, b, c) with b^2 - 4ac = D."""
    out = []
    r = isqrt(D)
    for b in range(1, r + 1):
        if (b - D) % 2:
            continue
        ac = (b * b - D) // 4
        n = -ac
        for d in range(1, n + 1):
            if n % d:
                continue
            for a in (d, -d):
                c = ac // a
                f = (a, b, c)
                if gcd(gcd(a, b), c) == 1 and _is_reduced(f, D):
                    out.append(f)
    return sorted(out)


def _rho(form: tuple[int, int, int], D: int) -> tuple[int, int, int]:
    """One reduction step (a, b, c) -> (c, b', a') with b' = -b mod 2c."""
    a, b, c = form
    r = isqrt(D)
    m = 2 * abs(c)
    if abs(c) > r:
        # -|c| < b' <= |c|
        b2 = (-b) % m
        if b2 > abs(c):
            b2 -= m
    else:
        # sqrt(D) - 2|c| < b' < sqrt(D); sqrt(D) irrational
        b2 = (-b) % m
        # largest value < sqrt(D) in the residue class
        b2 += ((r - b2) // m) * m
    a2 = (b2 * b2 - D) // (4 * c)
    return (c, b2, a2)


def reduce_form(form: tuple[int, int, int], D: int, cap: int = 10_000):
    f = form
    for _ in range(cap):
        if _is_reduced(f, D):
            return f
        f = _rho(f, D)
    raise CapExhausted("form reduction did not terminate")


def _random_equivalent(form, rng: random.Random):
    """Act on a form by a random product of the SL2(Z) generators."""
    a, b, c = form
    for _ in range(rng.randint(1, 6)):
        if rng.random() < 0.5:
            n = rng.randint(-3, 3)
            # x -> x + n y
            a, b, c = a, b + 2 * a * n, a * n * n + b * n + c
        else:
            # (x, y) -> (-y, x)
            a, b, c = c, -b, a
    return a, b, c


def narrow_class_number(p: int, seed: int | None = None) -> int:
    """Number of proper-equivalence cycles of reduced forms of disc(k0).

    With ``seed`` set, forms are visited in random order and each is first
    scrambled by a random unimodular substitution and re-reduced, which
    exercises the reduction operator instead of trusting the enumeration.
    """
    D = field_discriminant(check_p(p))
    forms = reduced_forms(D)
    seen: set[tuple[int, int, int]] = set()
    rng = random.Random(seed) if seed is not None else None
    if rng is not None:
        forms = forms[:]
        rng.shuffle(forms)
    cycles = 0
    for f in forms:
        if rng is not None:
            f = reduce_form(_random_equivalent(f, rng), D)
        if f in seen:
            continue
        cycles += 1
        g = f
        while g not in seen:
            seen.add(g)
            g = _rho(g, D)
        if g != f:
            raise AssertionError(f"reduction cycle from {f} did not close")
    return cycles


def class_number(p: int, seed: int | None = None) -> int:
    h_plus = narrow_class_number(p, seed)
    if fundamental_unit(p).norm() == -1:
        return h_plus
    return h_plus // 2


def class_number_analytic(p: int) -> int:
    """Dirichlet's class number formula; floating point, for cross-checks."""
    D = field_discriminant(p)

    def chi(k: int) -> int:
        if D == 8:
            return {1: 1, 7: 1, 3: -1, 5: -1}.get(k % 8, 0)
        r = pow(k, (D - 1) // 2, D)
        return 0 if r == 0 else (1 if r == 1 else -1)

    total = sum(chi(k) * log(sin(pi * k / D)) for k in range(1, D))
    eps = fundamental_unit(p)
    return round(-total / (2 * log(float(eps))))


def lambda_exponent(p: int) -> int:
    if p == 2:
        raise InvalidP("lambda is only defined for odd p")
    check_p(p)
    return 1 if p % 8 == 1 else 3


# ---------------------------------------------------------------------------
# residues modulo 4


@dataclass(frozen=True)
class Residue4:
    """Class of c0 + c1*w modulo 4O."""

    c0: int
    c1: int
    p: int

    def __post_init__(self):
        object.__setattr__(self, "c0", self.c0 % 4)
        object.__setattr__(self, "c1", self.c1 % 4)

    def __mul__(self, other: Residue4) -> Residue4:
        # w^2 = w + (p-1)/4, or w^2 = 2 for p = 2
        a0, a1, b0, b1 = self.c0, self.c1, other.c0, other.c1
        if self.p == 2:
            return Residue4(a0 * b0 + 2 * a1 * b1, a0 * b1 + a1 * b0, 2)
        k = (self.p - 1) // 4
        ww = a1 * b1
        return Residue4(a0 * b0 + k * ww, a0 * b1 + a1 * b0 + ww, self.p)

    @property
    def element(self) -> QuadElem:
        return QuadElem.from_omega(self.c0, self.c1, self.p)


def residue_mod4(u: QuadElem) -> Residue4:
    c0, c1 = u.omega_coords()
    return Residue4(c0, c1, u.p)


@lru_cache(maxsize=None)
def squares_mod4(p: int) -> frozenset[Residue4]:
    out = set()
    for c0 in range(4):
        for c1 in range(4):
            r = Residue4(c0, c1, p)
            out.add(r * r)
    return frozenset(out)


def is_odd(u: QuadElem) -> bool:
    return u.norm() % 2 == 1


def is_square_mod4(u: QuadElem) -> bool:
    """Whether u = xi^2 (mod 4) for some integer xi of k0; u must be odd."""
    if not is_odd(u):
        raise NotOdd(f"{u} is not coprime to 2")
    return residue_mod4(u) in squares_mod4(u.p)


def as_fraction(u: QuadElem) -> tuple[Fraction, Fraction]:
    return Fraction(u.s, u.den), Fraction(u.t, u.den)
