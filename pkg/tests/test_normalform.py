import random
from fractions import Fraction

import pytest
from helpers import rand_q

from trizero.bases import B, decompose_b, make_generator, reconstruct
from trizero.errors import PreconditionError
from trizero.normalform import (
    CUBIC_FREE,
    cubic_coefficients,
    cubic_field,
    hamiltonian_reduce,
    lie_exp,
    normal_form_field,
    normalize,
    quartic_closed_form,
    quartic_normal_form_closed,
    rescale_leading,
    scale_coeffs,
    scale_field,
    secondary_invariant,
    single_index_field,
)
from trizero.poisson import secondary_potential
from trizero.ratpoly import DELTA, Poly, X, Y, Z
from trizero.sl2core import N
from trizero.vfield import VField, apply_to, divergence


def _flow(gen, max_deg):
    out = []
    for c in (X, Y, Z):
        total = term = c
        n = 1
        while True:
            term = apply_to(gen, term).truncate(max_deg) * Fraction(1, n)
            if not term:
                break
            total = total + term
            n += 1
        out.append(total.truncate(max_deg))
    return out


def _is_conjugate(v, nf, max_deg):
    """v(phi) = Dphi . w for phi the composite of the time-one flows."""
    phi = [X, Y, Z]
    for _, gen in nf.generators_used:
        step = _flow(reconstruct(gen), max_deg)
        phi = [p.compose(*step).truncate(max_deg) for p in phi]
    w = nf.transformed_field
    lhs = [c.compose(*phi).truncate(max_deg) for c in v.components]
    rhs = [sum((p.diff(j) * w.components[j] for j in range(3)), Poly()).truncate(max_deg) for p in phi]
    return lhs == rhs


def _random_free(rng):
    return {name: rand_q(rng, -3, 3, 3) for name in CUBIC_FREE}


def test_normal_form_is_conjugate_and_normal():
    rng = random.Random(21)
    for _ in range(4):
        v = cubic_field(_random_free(rng))
        nf = normalize(v, 3)
        assert _is_conjugate(v, nf, 4)
        assert all(idx.l == -1 for idx in decompose_b(nf.transformed_field) if idx != B(1, 0))
        assert nf.transformed_field == normal_form_field(nf.coeffs)
        assert nf.transformed_field == quartic_normal_form_closed(nf.coeffs)


def test_strategies_agree():
    rng = random.Random(22)
    for _ in range(3):
        v = cubic_field(_random_free(rng))
        assert normalize(v, 3, "grade").coeffs == normalize(v, 3, "term").coeffs
    with pytest.raises(ValueError):
        normalize(v, 3, "nope")


def test_low_order_closed_form_coefficients():
    rng = random.Random(23)
    for _ in range(5):
        free = _random_free(rng)
        nf = normalize(cubic_field(free), 3)
        closed = quartic_closed_form(free)
        for key in ((1, 0), (2, 0), (0, 1)):
            assert nf.coeffs.get(key, 0) == closed["coeffs"][key]
        assert decompose_b(cubic_field(free)) == closed["d"]


def test_normal_form_is_independent_of_a_preliminary_conjugation():
    # weights force uniqueness: conjugating first by a random B-generator changes nothing
    rng = random.Random(24)
    v = cubic_field(_random_free(rng))
    gen = make_generator(B(2, 1)) * Fraction(3, 2) + make_generator(B(-1, 0, 1)) * 2
    moved = lie_exp(gen, v, 4)
    assert normalize(moved, 3).coeffs == normalize(v, 3).coeffs


def test_invariant_and_linearizable_case():
    nf = normalize(-N, 4)
    assert nf.linearizable and nf.p is None and nf.p_label == "linearizable"
    with pytest.raises(PreconditionError):
        secondary_invariant(nf)
    nf = normalize(single_index_field({2: 5}), 4)
    assert nf.p == 2 and nf.coeffs == {(2, 0): 5}
    assert secondary_invariant(nf) == X + Z**3 * Fraction(5, 3)
    assert secondary_invariant(nf) == secondary_potential(nf.transformed_field)


def test_only_delta_terms_leave_p_undetermined():
    v = -N + make_generator(B(-1, 0, 1)) * 2
    nf = normalize(v, 4)
    assert nf.p is None and not nf.linearizable and nf.p_label == "undetermined"


def test_time_scaling_of_the_linear_part():
    v = (-N + make_generator(B(-1, 1)) * 4) * 2
    nf = normalize(v, 3)
    assert nf.time_scale == 2 and nf.coeffs == {(1, 0): 4}


def test_preconditions():
    with pytest.raises(PreconditionError):
        normalize(VField(X, Poly(), Poly()), 3)
    with pytest.raises(PreconditionError):
        normalize(-N + VField(1, 0, 0), 3)
    with pytest.raises(PreconditionError):
        normalize(make_generator(B(0, 0)), 3)


def test_rescaling():
    for p, b, target in ((1, Fraction(5), 1), (3, Fraction(-2, 3), 1), (2, Fraction(9, 4), 1), (2, Fraction(-4), -1)):
        nf = normalize(single_index_field({p: b, p + 1: 1}), p + 2)
        r = rescale_leading(nf)
        assert r.coeffs[(p, 0)] == target
        assert r.rescaling["exact"] == (target == 1)
        assert scale_field(nf.transformed_field, r.rescaling["alpha"], r.rescaling["t"]) == r.transformed_field
    nf = normalize(single_index_field({2: 3}), 4)
    r = rescale_leading(nf)
    assert not r.rescaling["exact"] and r.coeffs == nf.coeffs
    assert scale_coeffs({(1, 1): 1}, 2, 3) == {(1, 1): Fraction(1, 3**6 * 2**3)}


def test_hamiltonian_reduction_preconditions():
    nf = normalize(-N + make_generator(B(-1, 1, 1)), 4)
    with pytest.raises(PreconditionError):
        hamiltonian_reduce(nf)
    ham = hamiltonian_reduce(normalize(single_index_field({1: 2}), 3))
    assert ham.hamiltonian == Y**2 - X * Z + Z**3
    assert ham.check_contract()


def test_cubic_constraints():
    rng = random.Random(25)
    full = cubic_coefficients(_random_free(rng))
    assert len(full) == 48
    v = cubic_field(full)
    assert divergence(v) == Poly() and apply_to(v, DELTA) == Poly()
    bad = dict(_random_free(rng))
    bad["a030"] = 2 * bad["b021"] + 1
    with pytest.raises(PreconditionError, match="a030"):
        cubic_field(bad)
    with pytest.raises(PreconditionError):
        cubic_coefficients({"q123": 1})
