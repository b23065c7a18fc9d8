from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lieyamaguti import (AxiomFailure, Representation, adjoint, check_lya, check_representation, corpus, io,
                         semidirect)
from lieyamaguti.errors import DimensionMismatch
from lieyamaguti.rep import derived_D
from lieyamaguti.report import all_ok
import oracles
from conftest import corpus_algebras, load


@pytest.mark.parametrize("name,a", corpus_algebras(), ids=lambda x: x if isinstance(x, str) else "")
def test_adjoint_is_a_representation(name, a):
    assert all_ok(check_representation(a, adjoint(a)))
    assert all_ok(check_lya(semidirect(a, adjoint(a))))


def test_zero_representation_gives_trivial_extension():
    a = load("lie-dim2.json")
    r = Representation.zero(2, 3)
    assert all_ok(check_representation(a, r))
    s = semidirect(a, r)
    assert s.dim == 5 and all_ok(check_lya(s))


def test_D_matches_loop_oracle():
    for name, a in corpus_algebras(3):
        r = adjoint(a)
        D = derived_D(r, a)
        br = oracles.Bi(a.pi.c)
        rep = oracles.Rep(br, r.rho, r.mu)
        e = [oracles.basis(a.dim, i) for i in range(a.dim)]
        for i in range(a.dim):
            for j in range(a.dim):
                for k in range(a.dim):
                    assert list(D[i, j].dot(np.array(e[k], dtype=object))) == rep.D(e[i], e[j], e[k])


def test_adjoint_D_is_the_ternary_bracket():
    # on an LY algebra D(x,y) z = [x,y,z] for the adjoint representation
    for name, a in corpus_algebras():
        D = derived_D(adjoint(a), a)
        assert np.all(np.einsum("xyoz->xyzo", D) == a.omega.c), name


def _rep_iff(a, r):
    return all_ok(check_representation(a, r)) == all_ok(check_lya(semidirect(a, r, validate=True)))


@st.composite
def small_reps(draw):
    a = load(draw(st.sampled_from(["lie-dim2.json", "heisenberg-3.json", "abelian-2.json"])))
    v = draw(st.integers(1, 2))
    vals = st.sampled_from([Fraction(0)] * 4 + [Fraction(1), Fraction(-1)])
    rho = np.array([[[draw(vals) for _ in range(v)] for _ in range(v)] for _ in range(a.dim)], dtype=object)
    mu = np.array([[[[draw(vals) for _ in range(v)] for _ in range(v)] for _ in range(a.dim)]
                   for _ in range(a.dim)], dtype=object)
    return a, Representation(a.dim, v, rho, mu)


@settings(max_examples=60, deadline=None)
@given(small_reps())
def test_representation_iff_semidirect_is_ly(ar):
    a, r = ar
    assert _rep_iff(a, r)


def test_perturbed_adjoint_fails_both_ways():
    a = load("lie-dim2.json")
    r = adjoint(a)
    rho = np.array(r.rho, dtype=object)
    rho[0, 0, 0] += 1
    bad = Representation(a.dim, a.dim, rho, r.mu)
    assert not all_ok(check_representation(a, bad))
    assert not all_ok(check_lya(semidirect(a, bad)))


def test_semidirect_rejects_invalid_base():
    from lieyamaguti import LyAlgebra
    bad = LyAlgebra.from_entries(2, [(0, 1, 1, 1)], [(0, 1, 1, 1, 1)])
    with pytest.raises(AxiomFailure):
        semidirect(bad, Representation.zero(2, 1))


def test_shape_errors():
    a = load("lie-dim2.json")
    with pytest.raises(DimensionMismatch):
        Representation(2, 2, np.zeros((3, 2, 2), dtype=object), np.zeros((2, 2, 2, 2), dtype=object))
    with pytest.raises(DimensionMismatch):
        check_representation(a, Representation.zero(3, 1))


def test_some_single_entry_perturbations_stay_representations():
    a, r = io.read_representation(corpus.path("rep-adjoint-lie-dim2.json"))
    rho = np.array(r.rho, dtype=object)
    rho[0, 1, 0] += 1
    p = Representation(r.alg_dim, r.v_dim, rho, r.mu)
    assert all_ok(check_representation(a, p))
    s = semidirect(a, p)
    assert not any(oracles.ly_failures(s.pi.c, s.omega.c).values())
