import random
from math import gcd

import pytest

from hilbgenus.arith import is_squarefree
from hilbgenus.errors import InvalidA, InvalidP, MalformedStandardForm
from hilbgenus.fieldcase import (
    cyclic_quartic_discriminants,
    genus_field,
    ramified_inventory,
    relative_discriminant_K,
    resolve,
    unit_like_generator,
)
from hilbgenus.hilbert import predicted_rank
from hilbgenus.ideals import primes_above
from hilbgenus.quadfield import QuadElem
from hilbgenus.verify import ramifies_in_K

from conftest import grid_instances


def test_resolve_examples():
    prof = resolve(5, 42427)
    assert (prof.n, prof.m, prof.a_case, prof.p_case, prof.lam, prof.h) == (
        4, 3, "odd_3mod4", "p5mod8", 3, 1)
    assert prof.split_primes == (11, 19, 29) and prof.inert_primes == (7,)
    prof = resolve(2, 595)
    assert (prof.n, prof.m, prof.p_case, prof.lam) == (3, 2, "p_two", None)
    prof = resolve(5, 1)
    assert (prof.n, prof.m, prof.a_case) == (0, 0, "odd_1mod4")
    prof = resolve(73, 4199)
    assert prof.a_case == "odd_3mod4" and prof.split_primes == (19,)


def test_delta():
    prof = resolve(5, 42427)
    assert prof.delta == -42427 * prof.eps * QuadElem.sqrt_p(5)
    assert prof.delta.norm() == 5 * 42427**2
    assert prof.delta.sign() == -1 and prof.delta.sign(True) == -1


@pytest.mark.parametrize("p, a", [(5, 12), (5, 10), (2, 6), (5, 0), (73, 73)])
def test_resolve_rejects_a(p, a):
    with pytest.raises(InvalidA):
        resolve(p, a)


@pytest.mark.parametrize("p", [3, 6, 7, 9, 11, 15])
def test_resolve_rejects_p(p):
    with pytest.raises(InvalidP):
        resolve(p, 1)


@pytest.mark.parametrize("a, b, d, disc, coeff", [(1, 1, 2, 2**11, 4),
                                                  (1, 2, 5, 2000, 4),
                                                  (3, 2, 5, 1125, 3),
                                                  (1, 1, 5, 2**6 * 125, 8),
                                                  (-1, 2, 5, 125, -1)])
def test_cyclic_quartic_discriminants(a, b, d, disc, coeff):
    assert cyclic_quartic_discriminants(a, b, d) == (disc, coeff)


@pytest.mark.parametrize("a, b, d", [(1, 2, 7), (2, 1, 5), (5, 1, 5), (1, 0, 5),
                                     (9, 1, 2), (1, 3, 18)])
def test_malformed(a, b, d):
    with pytest.raises(MalformedStandardForm):
        cyclic_quartic_discriminants(a, b, d)


def _random_standard_forms(n, seed=0):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        b, c = rng.randint(1, 40), rng.randint(1, 40)
        d = b * b + c * c
        if gcd(b, c) != 1 or not is_squarefree(d):
            continue
        a = rng.choice([-1, 1]) * rng.randrange(1, 400, 2)
        if not is_squarefree(abs(a)) or gcd(a, d) != 1:
            continue
        out.append((a, b, d))
    return out


def test_discriminant_identity():
    """disc_L = disc(k)^2 * N(relative discriminant), k = Q(sqrt d)."""
    for a, b, d in _random_standard_forms(100):
        disc_L, coeff = cyclic_quartic_discriminants(a, b, d)
        disc_k = 4 * d if d % 2 == 0 else d
        assert disc_L == disc_k**2 * coeff**2 * d


@pytest.mark.parametrize("p, a, coeff", [(5, 42427, 4 * 42427), (5, 29, 29),
                                         (2, 595, 2380), (73, 4199, 4199),
                                         (73, 13, 52), (17, 2, 8)])
def test_relative_discriminant(p, a, coeff):
    assert relative_discriminant_K(resolve(p, a)) == coeff


def test_inventory_examples():
    assert ramified_inventory(resolve(5, 42427)).t == 11
    assert ramified_inventory(resolve(2, 595)).t == 8
    assert ramified_inventory(resolve(5, 1)).t == 3
    inv = ramified_inventory(resolve(73, 4199))
    assert [rp.q for rp in inv.finite_primes] == [13, 17, 19, 73]


def test_inventory_on_grid():
    """Inventory agrees with ramification read off delta, prime by prime."""
    for p, a in grid_instances():
        prof = resolve(p, a)
        inv = ramified_inventory(prof)
        listed = set(inv.ideals())
        for q in sorted({2, p, *prof.odd_primes}):
            for P in primes_above(q, p):
                assert (P in listed) == ramifies_in_K(P, prof), (p, a, P)
        two = any(P.q == 2 for P in listed)
        assert two == (relative_discriminant_K(prof) % 4 == 0 or p == 2)
        assert inv.t - 3 == predicted_rank(prof)


@pytest.mark.parametrize("p, a, gens", [(5, 42427, [-1, -7, -11, -19, 29]),
                                        (2, 595, [5, -7, 17]), (5, 1, []),
                                        (73, 4199, [13, 17, -19]),
                                        (5, 2 * 13, [2, 13]), (5, 6, [-2, -3]),
                                        (17, 5, [-1, 5]), (17, 10, [-2, 5]),
                                        (17, 6, [2, -3])])
def test_genus_field(p, a, gens):
    assert [g.payload for g in genus_field(resolve(p, a))] == gens


def test_genus_field_size_on_grid():
    for p, a in grid_instances():
        prof = resolve(p, a)
        g = genus_field(prof)
        extra = 1 if unit_like_generator(prof) is not None else 0
        assert len(g) == prof.n + extra
