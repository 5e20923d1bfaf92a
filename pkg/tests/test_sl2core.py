from fractions import Fraction
from math import factorial

import pytest

from trizero.errors import PreconditionError
from trizero.ratpoly import DELTA, Poly, X, Y, Z
from trizero.sl2core import (
    M,
    ad_n_pow,
    kappa,
    n_pow,
    n_pow_z,
    n_pow_z_eta,
    n_pow_z_zeta,
    nfm_three_component,
    nm_expand,
    pochhammer,
    reexpand_product,
    reexpand_sum,
)


def test_kappa_is_falling_factorial():
    assert kappa(0, 5) == 1
    assert kappa(3, 5) == 60
    assert kappa(4, 3) == 0
    for l in range(6):
        for i in range(l, 9):
            assert kappa(l, i) == factorial(i) // factorial(i - l)
    with pytest.raises(ValueError):
        kappa(-1, 3)


def test_pochhammer():
    assert pochhammer(3, -1, 3) == 6
    assert pochhammer(5, -2, 2) == 15
    assert pochhammer(7, 1, 0) == 1


def test_n_on_coordinates():
    assert n_pow_z(1, 1) == Y * 2
    assert n_pow_z(2, 1) == X * 2
    assert n_pow_z(3, 1) == Poly()
    assert n_pow(DELTA, 1) == Poly()


def test_n_powers_by_direct_derivation():
    for i in range(6):
        for q in range(2 * i + 2):
            f = Z**i
            for _ in range(q):
                f = X * f.diff(1) + Y * f.diff(2) * 2
            assert n_pow_z(q, i) == f
        assert n_pow_z(2 * i, i) == X**i * Fraction(factorial(2 * i))
        assert n_pow_z(2 * i + 1, i) == Poly()


@pytest.mark.parametrize("q", range(11))
def test_eta_and_zeta_rebuild_n_powers(q):
    for i in range(11):
        assert n_pow_z_eta(q, i) == n_pow_z(q, i)
        assert n_pow_z_zeta(q, i) == n_pow_z(q, i)


def test_reexpand_example():
    assert reexpand_product(1, 1, 1, 1) == {0: Fraction(-4, 3), 1: Fraction(1, 3)}
    assert reexpand_sum(1, 1, 1, 1) == n_pow_z(1, 1) ** 2


def test_nm_expand_matches_ad_n():
    for f in (Z, Z**2, Z * DELTA, Z**3):
        for n in range(5):
            assert nm_expand(n, f) == ad_n_pow(M * f, n)
    with pytest.raises(PreconditionError):
        nm_expand(1, Z + Z**2)


def test_three_component_form_matches_ad_n():
    for f in (Poly.const(1), Z, Z**2, Z * DELTA, Z**3, DELTA):
        for n in range(6):
            assert nfm_three_component(n, f) == ad_n_pow(M * f, n)
    with pytest.raises(PreconditionError):
        nfm_three_component(1, X)
