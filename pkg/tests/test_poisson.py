import random
from fractions import Fraction

import pytest
from helpers import rand_b_member, rand_poly
from hypothesis import given, settings
from hypothesis import strategies as st

from trizero.bases import B, bfrak_of_degree, make_bfrak, make_generator
from trizero.errors import PreconditionError
from trizero.poisson import (
    hamiltonian_field,
    poisson_bracket,
    poisson_bracket_gradient,
    poisson_bracket_leibniz,
    psi,
    psi_inverse,
    rate_of_change,
    secondary_potential,
)
from trizero.ratpoly import DELTA, Poly, X, Y, Z
from trizero.sl2core import H, M, N
from trizero.vfield import grad_cross

coef = st.fractions(min_value=-9, max_value=9, max_denominator=5)
mono = st.tuples(*(st.integers(0, 4),) * 3)
polys = st.dictionaries(mono, coef, max_size=4).map(Poly)


def test_coordinate_brackets():
    assert poisson_bracket(X, Y) == X
    assert poisson_bracket(X, Z) == Y * 2
    assert poisson_bracket(Y, Z) == Z


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_three_routes_agree(f, g):
    ref = poisson_bracket(f, g)
    assert poisson_bracket_leibniz(f, g) == ref
    assert poisson_bracket_gradient(f, g) == ref


@settings(max_examples=30, deadline=None)
@given(polys, polys, polys)
def test_poisson_axioms(f, g, h):
    assert poisson_bracket(f, g) == -poisson_bracket(g, f)
    assert poisson_bracket(f, g * h) == poisson_bracket(f, g) * h + g * poisson_bracket(f, h)
    jac = (poisson_bracket(f, poisson_bracket(g, h)) + poisson_bracket(g, poisson_bracket(h, f))
           + poisson_bracket(h, poisson_bracket(f, g)))
    assert jac == Poly()
    assert poisson_bracket(DELTA, f) == Poly()


def test_psi_on_coordinates():
    assert psi(X) == N
    assert psi(Y) == H * Fraction(1, 2)
    assert psi(Z) == -M


def test_psi_is_the_hamiltonian_field():
    for d in range(1, 6):
        for idx in bfrak_of_degree(d):
            f = make_bfrak(*idx)
            assert psi(f) == hamiltonian_field(f)
            assert psi(f) == make_generator(B(idx.l, idx.i, idx.k))


def test_psi_rejects_casimirs():
    with pytest.raises(PreconditionError):
        psi(DELTA + X)


def test_secondary_potential():
    assert secondary_potential(make_generator(B(1, 1))) == (X * Z + Y**2 * 2) * Fraction(1, 6)
    rng = random.Random(2)
    for _ in range(10):
        v = rand_b_member(rng, 5)
        s = secondary_potential(v)
        assert s == -psi_inverse(v)
        assert grad_cross(s, DELTA) == v
        f = rand_poly(rng, 3)
        assert rate_of_change(f, v) == poisson_bracket(f, s)
