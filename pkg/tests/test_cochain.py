import random
from fractions import Fraction
from math import comb

import numpy as np
import pytest
from hypothesis import given, settings

from lieyamaguti import Cochain, Representation, adjoint, check_lya, delta, graded_bracket, mc_residual
from lieyamaguti.cochain import circle, pi_cochain, shuffles, space_dim, structure_cochain, wedge_basis
from lieyamaguti.cohom import delta_vs_bracket
from lieyamaguti.errors import DimensionMismatch
import oracles
from conftest import corpus_algebras, load, random_cochain
from test_lya import skew_structures


def naive(F, a, rep):
    br, tr = oracles.Bi(a.pi.c), oracles.Tri(a.omega.c)
    r = oracles.Rep(br, rep.rho, rep.mu)
    return oracles.naive_delta(oracles.NaiveCochain(F.degree, a.dim, rep.v_dim, F.f, F.g), br, tr, r)


def assert_matches_naive(F, a, rep):
    got = delta(F, a, rep)
    d1, d2 = naive(F, a, rep)
    if F.degree == 0:
        for w, (x, y) in enumerate(wedge_basis(a.dim).pairs):
            assert list(got.f[w]) == d1[(x, y)]
            for z in range(a.dim):
                assert list(got.g[w, z]) == d2[(x, y, z)]
        return
    for idx, v in d1.items():
        assert list(got.f[idx]) == v, idx
    for idx, v in d2.items():
        assert list(got.g[idx]) == v, idx


@pytest.mark.parametrize("name,a", corpus_algebras(3), ids=lambda x: x if isinstance(x, str) else "")
@pytest.mark.parametrize("degree", [0, 1, 2])
def test_delta_matches_written_formula(name, a, degree):
    rng = random.Random(degree * 101 + a.dim)
    for _ in range(3):
        assert_matches_naive(random_cochain(rng, degree, a.dim, density=0.3), a, adjoint(a))


def test_delta_with_non_adjoint_coefficients():
    a = load("heisenberg-3.json")
    # a one-dimensional module: rho(e1) = 1, everything else zero
    rho = np.zeros((3, 1, 1), dtype=object)
    rho[0, 0, 0] = Fraction(1)
    rep = Representation(3, 1, rho, np.zeros((3, 3, 1, 1), dtype=object))
    rng = random.Random(7)
    for degree in (0, 1, 2):
        fs = (3, 1) if degree == 0 else (3,) * degree + (1,)
        gs = None if degree == 0 else (3,) * degree + (3, 1)
        f = np.array([Fraction(rng.choice([0, 1, -2])) for _ in range(int(np.prod(fs)))], dtype=object).reshape(fs)
        g = None if gs is None else np.array(
            [Fraction(rng.choice([0, 1, 3])) for _ in range(int(np.prod(gs)))], dtype=object).reshape(gs)
        assert_matches_naive(Cochain(degree, 3, 1, f, g), a, rep)


@pytest.mark.parametrize("name,a", corpus_algebras(3), ids=lambda x: x if isinstance(x, str) else "")
def test_delta_squares_to_zero(name, a):
    rng = random.Random(3)
    for degree in (0, 1, 2):
        F = random_cochain(rng, degree, a.dim)
        assert delta(delta(F, a), a).is_zero()


@pytest.mark.parametrize("name,a", corpus_algebras(3), ids=lambda x: x if isinstance(x, str) else "")
def test_delta_is_the_signed_bracket_on_random_cochains(name, a):
    rng = random.Random(11)
    for degree in (0, 1, 2, 3):
        if degree == 3 and a.dim > 2:
            continue
        assert delta_vs_bracket(random_cochain(rng, degree, a.dim), a).is_zero()


@settings(max_examples=40, deadline=None)
@given(skew_structures())
def test_maurer_cartan_iff_ternary_identities(a):
    ok = {r.axiom_id: r.ok for r in check_lya(a)}
    assert mc_residual(a).is_zero() == (ok["LY3"] and ok["LY4"])


def test_bracket_graded_symmetry():
    rng = random.Random(5)
    for p in range(3):
        for q in range(3):
            P, Q = random_cochain(rng, p, 2, 0.4), random_cochain(rng, q, 2, 0.4)
            lhs = graded_bracket(P, Q)
            rhs = graded_bracket(Q, P).scale(-((-1) ** (p * q)))
            assert lhs == rhs, (p, q)


def test_bracket_graded_jacobi():
    rng = random.Random(9)
    for p, q, r in [(0, 0, 1), (0, 1, 1), (1, 1, 1), (0, 1, 2), (1, 1, 0)]:
        P, Q, R = (random_cochain(rng, k, 2, 0.4) for k in (p, q, r))
        total = (graded_bracket(P, graded_bracket(Q, R)).scale((-1) ** (p * r))
                 + graded_bracket(Q, graded_bracket(R, P)).scale((-1) ** (q * p))
                 + graded_bracket(R, graded_bracket(P, Q)).scale((-1) ** (r * q)))
        assert total.is_zero(), (p, q, r)


def test_circle_needs_positive_degrees():
    a = load("lie-dim2.json")
    with pytest.raises(ValueError):
        circle(Cochain.zero(0, 2), pi_cochain(a))


def test_shuffles_count_and_sign():
    for p in range(4):
        for q in range(4):
            sh = shuffles(p, q)
            assert len(sh) == comb(p + q, p)
            assert len({s.perm for s in sh}) == len(sh)
    # the single transposition of a (1,1)-shuffle is odd
    assert sorted(s.sign for s in shuffles(1, 1)) == [-1, 1]


def test_cochain_vector_round_trip_and_shapes():
    rng = random.Random(1)
    for degree in (0, 1, 2):
        F = random_cochain(rng, degree, 3)
        assert Cochain.from_vector(degree, 3, 3, F.vector()) == F
        assert F.vector().shape == (space_dim(degree, 3),)
    with pytest.raises(DimensionMismatch):
        Cochain(1, 2, 2, np.zeros((2, 2), dtype=object))
    with pytest.raises(DimensionMismatch):
        Cochain(0, 2, 2, np.zeros((2, 2), dtype=object), np.zeros((1, 2, 2), dtype=object))


def test_structure_cochain_keeps_wedge_entries():
    a = load("heisenberg-3.json")
    P = structure_cochain(a.pi.c, a.omega.c)
    wb = wedge_basis(3)
    for w, (x, y) in enumerate(wb.pairs):
        assert list(P.f[w]) == list(a.pi.c[x, y])
        assert np.all(P.g[w] == a.omega.c[x, y])


def test_huge_entries_take_the_big_integer_path():
    a = load("heisenberg-3.json")
    rng = random.Random(17)
    k = Fraction(10 ** 15, 7)
    for degree in (0, 1, 2):
        F = random_cochain(rng, degree, a.dim)
        assert delta(F.scale(k), a) == delta(F, a).scale(k)
        P = random_cochain(rng, 1, a.dim)
        assert graded_bracket(P.scale(k), F.scale(k)) == graded_bracket(P, F).scale(k * k)
