import pytest

from hilbgenus.arith import is_prime, legendre
from hilbgenus.errors import InvalidInput, NotRepresentable, NotSplit
from hilbgenus.fieldcase import resolve
from hilbgenus.hilbert import alpha_star, hilbert_genus
from hilbgenus.normeq import (
    NormSolution,
    solve_norm_equation,
    solve_norm_equation_bruteforce,
    solve_two_rep,
)
from hilbgenus.quadfield import class_number, fundamental_unit, lambda_exponent
from hilbgenus.verify import profile_support, square_class_vector

from conftest import ODD_GRID_P

ODD_Q = [q for q in range(3, 300, 2) if is_prime(q)]


@pytest.mark.parametrize("p, q, lam_h, expected", [(5, 11, 3, (4, 1, 1)),
                                                   (73, 19, 1, (26, 3, 1)),
                                                   (13, 3, 3, (4, 1, 1)),
                                                   (5, 19, 3, (8, 3, 1)),
                                                   (5, 29, 3, (7, 2, 1))])
def test_examples(p, q, lam_h, expected):
    sol = solve_norm_equation(p, q, lam_h)
    assert (sol.x, sol.y, sol.k) == expected


def test_full_exponent():
    sol = solve_norm_equation(5, 11, 3, strict=True)
    assert sol.k == 3
    assert sol.x**2 - 5 * sol.y**2 == 11**3
    assert sol.y % 11 or sol.x % 11


def test_errors():
    with pytest.raises(NotSplit):
        solve_norm_equation(5, 7, 3)
    with pytest.raises(InvalidInput):
        solve_norm_equation(5, 15, 3)
    with pytest.raises(InvalidInput):
        solve_norm_equation(5, 11, 2)
    with pytest.raises(NotRepresentable):
        solve_two_rep(11)


@pytest.mark.parametrize("q, xy", [(7, (3, 1)), (17, (7, 4)), (23, (5, 1))])
def test_two_rep_examples(q, xy):
    sol = solve_two_rep(q)
    assert (sol.x, sol.y) == xy


def test_two_rep_side_conditions():
    for q in range(3, 3000, 2):
        if not is_prime(q) or q % 8 not in (1, 7):
            continue
        sol = solve_two_rep(q)
        assert sol.x * sol.x - 2 * sol.y * sol.y == q
        assert sol.x % 2 == 1 and sol.y > 0
        if q % 8 == 1:
            assert sol.y % 4 == 0
        else:
            assert sol.y % 2 == 1


def test_two_rep_least_y():
    for q in (7, 17, 23, 31, 41, 47, 71, 73, 89, 97):
        sol = solve_two_rep(q)
        for y in range(1, sol.y):
            if q % 8 == 1 and y % 4:
                continue
            x2 = q + 2 * y * y
            assert int(x2**0.5) ** 2 != x2 and (int(x2**0.5) + 1) ** 2 != x2


@pytest.mark.parametrize("p", ODD_GRID_P)
def test_parity_law_on_grid(p):
    lam_h = lambda_exponent(p) * class_number(p)
    for q in ODD_Q:
        if q == p or legendre(p, q) != 1:
            continue
        sol = solve_norm_equation(p, q, lam_h)
        assert sol.x**2 - p * sol.y**2 == q**sol.k
        assert sol.k % 2 == 1 and sol.k <= lam_h
        if q % 4 == 1:
            assert sol.x % 2 == 1 and sol.y % 2 == 0
        else:
            assert sol.x % 2 == 0 and sol.y % 2 == 1
        assert solve_norm_equation(p, q, lam_h) == sol


@pytest.mark.parametrize("p", [p for p in ODD_GRID_P if p < 110])
def test_orbit_solver_matches_bruteforce(p):
    lam_h = lambda_exponent(p) * class_number(p)
    for q in ODD_Q:
        if q == p or legendre(p, q) != 1:
            continue
        sol = solve_norm_equation(p, q, lam_h)
        # no smaller odd exponent is solvable
        for k in range(1, sol.k, 2):
            assert solve_norm_equation_bruteforce(p, q, k) is None
        ref = solve_norm_equation_bruteforce(p, q, sol.k)
        assert (ref.x, ref.y) == (sol.x, sol.y)


def _rank(vectors):
    basis = {}
    for v in vectors:
        while v:
            low = v & -v
            if low not in basis:
                basis[low] = v
                break
            v ^= basis[low]
    return len(basis)


def _same_span(gens_a, gens_b, prof):
    elems = [g.element(prof.p) for g in gens_a + gens_b] + [prof.delta]
    support = profile_support(prof, tuple(elems))
    vec = lambda gens: [square_class_vector(g, prof, support).bits for g in gens]
    d = square_class_vector(prof.delta, prof, support).bits
    ra, rb = _rank(vec(gens_a) + [d]), _rank(vec(gens_b) + [d])
    return ra == rb == _rank(vec(gens_a) + vec(gens_b) + [d])


@pytest.mark.parametrize("p, a", [(5, 11), (5, 19), (13, 17), (73, 19), (17, 13),
                                  (41, 5), (89, 5), (29, 7), (5, 11 * 19 * 29)])
def test_tie_break_does_not_change_field(p, a):
    """Other solutions give the same Kummer group over K.

    Within one orbit the alpha* class is unchanged outright; a solution from
    the conjugate ideal changes it by q, which the q* generator absorbs.
    """
    prof = resolve(p, a)
    lam_h = lambda_exponent(p) * class_number(p)
    eps = fundamental_unit(p)
    base = hilbert_genus(prof).hilbert_generators
    for pick in (1, 2, -1):
        gens = [g for g in base if g.kind != "alpha_star"]
        for q in prof.split_primes:
            sol0 = solve_norm_equation(p, q, lam_h)
            sol = solve_norm_equation(p, q, lam_h, pick=pick)
            assert (sol.x, sol.y) != (sol0.x, sol0.y)
            g0, g = alpha_star(p, q, sol0, eps), alpha_star(p, q, sol, eps)
            v0 = square_class_vector(g0, prof)
            v = square_class_vector(g, prof, v0.support)
            if v.val_parities == v0.val_parities:
                assert v == v0
            gens.append(g)
        assert _same_span(base, gens, prof)


def test_two_rep_tie_break_does_not_change_field():
    prof = resolve(2, 7 * 17 * 23)
    eps = fundamental_unit(2)
    base = hilbert_genus(prof).hilbert_generators
    for pick in (1, 2):
        gens = [g for g in base if g.kind != "alpha_star"]
        gens += [alpha_star(2, q, solve_two_rep(q, pick=pick), eps) for q in (7, 17, 23)]
        assert _same_span(base, gens, prof)


def test_check_detects_bad_solution():
    with pytest.raises(AssertionError):
        NormSolution(11, 4, 2, 1, 5).check()
