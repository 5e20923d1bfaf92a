"""Poisson algebra on polynomials in x, y, z and its link to the B-span.

The bracket is fixed on coordinates by {x, y} = x, {x, z} = 2y, {y, z} = z;
Delta = xz - y^2 is a Casimir. ``psi`` sends bfrak^l_{i,k} to B^l_{i,k} and
coincides with f -> -X_f where X_f(F) = {F, f}.

Sign convention: the secondary potential of a field v in the B-span is
S(v) = -psi^{-1}(v). With it v = grad S x grad Delta, v_j = {x_j, S} and
v(F) = {F, S}.
"""

from __future__ import annotations

from functools import lru_cache

from .bases import BfrakIndex, GenIndex, decompose, decompose_bfrak, make_bfrak, make_generator, require_b
from .errors import InconsistencyError, PreconditionError
from .ratpoly import DELTA, Poly, X, Y, Z, _clean
from .vfield import VField, apply_to, grad_cross

COORDS = (X, Y, Z)


def _monomial_bracket(m1, m2) -> dict:
    i, j, k = m1
    m, n, p = m2
    out = {}
    c1 = i * n + j * p - k * n - j * m
    if c1:
        out[(i + m, n + j - 1, k + p)] = c1
    c2 = 2 * (i * p - k * m)
    if c2:
        key = (i + m - 1, n + j + 1, k + p - 1)
        out[key] = out.get(key, 0) + c2
    return out


def poisson_bracket(f: Poly, g: Poly) -> Poly:
    """{f, g} from the closed formula on monomial pairs."""
    d: dict = {}
    for m1, a in f.items():
        for m2, b in g.items():
            ab = a * b
            for key, c in _monomial_bracket(m1, m2).items():
                d[key] = d.get(key, 0) + ab * c
    return Poly._raw(_clean(d))


# coordinate table {x_a, x_b}
_COORD_BRACKET = {
    (0, 1): (1, 0, 0), (0, 2): (0, 1, 0), (1, 2): (0, 0, 1),
}
_COORD_SCALE = {(0, 1): 1, (0, 2): 2, (1, 2): 1}


def _coord_bracket(a: int, b: int) -> Poly:
    if a == b:
        return Poly()
    if a < b:
        return Poly({_COORD_BRACKET[(a, b)]: _COORD_SCALE[(a, b)]})
    return -_coord_bracket(b, a)


@lru_cache(maxsize=None)
def _leibniz_monomials(m1: tuple, m2: tuple) -> Poly:
    # peel one variable off the left monomial, then off the right one
    if sum(m1) == 0 or sum(m2) == 0:
        return Poly()
    if sum(m1) > 1:
        a = next(t for t in range(3) if m1[t])
        rest = list(m1)
        rest[a] -= 1
        rest = tuple(rest)
        xa = Poly({_unit(a): 1})
        return (Poly({rest: 1}) * _leibniz_monomials(_unit(a), m2)
                + xa * _leibniz_monomials(rest, m2))
    if sum(m2) > 1:
        return -_leibniz_monomials(m2, m1)
    a = next(t for t in range(3) if m1[t])
    b = next(t for t in range(3) if m2[t])
    return _coord_bracket(a, b)


def _unit(a):
    return tuple(1 if t == a else 0 for t in range(3))


def poisson_bracket_leibniz(f: Poly, g: Poly) -> Poly:
    """{f, g} by Leibniz recursion down to the coordinate brackets."""
    out = Poly()
    for m1, a in f.items():
        for m2, b in g.items():
            out = out + _leibniz_monomials(m1, m2) * (a * b)
    return out


def poisson_bracket_gradient(f: Poly, g: Poly) -> Poly:
    """{f, g} = grad Delta . (grad f x grad g)."""
    w = grad_cross(f, g)
    return DELTA.diff(0) * w.cx + DELTA.diff(1) * w.cy + DELTA.diff(2) * w.cz


def ad_x(g: Poly) -> Poly:
    return poisson_bracket(X, g)


def ad_y(g: Poly) -> Poly:
    return poisson_bracket(Y, g)


def ad_z(g: Poly) -> Poly:
    return poisson_bracket(Z, g)


def hamiltonian_field(f: Poly) -> VField:
    """-X_f, the field with components {f, x_j}."""
    return VField(*(poisson_bracket(f, c) for c in COORDS))


def psi(f: Poly) -> VField:
    """Image of ``f`` in the B-span by the index swap bfrak^l_{i,k} -> B^l_{i,k}.

    ``f`` must lie in the span of the bfrak generators: a nonzero component
    along a power of Delta (a Casimir) is rejected.
    """
    coeffs, casimir = decompose_bfrak(f)
    if casimir:
        m, c = min(casimir.items())
        raise PreconditionError(
            f"polynomial has a Casimir component {c}*Delta^{m} outside the bfrak span",
            witness=casimir,
        )
    out = VField.zero()
    for idx, c in coeffs.items():
        out = out + make_generator(GenIndex("B", idx.l, idx.i, idx.k)) * c
    return out


def psi_inverse(v: VField) -> Poly:
    """Preimage of a B-span member, via its unique B-expansion."""
    require_b(v)
    exp = decompose(v)
    if exp.families() - {"B"}:
        raise InconsistencyError(f"B-span member expanded with A/C terms: {exp}")
    out = Poly()
    for idx, c in exp.items():
        out = out + make_bfrak(idx.l, idx.i, idx.k) * c
    return out


def secondary_potential(v: VField) -> Poly:
    """S(v) = -psi^{-1}(v), checked against v = grad S x grad Delta."""
    s = -psi_inverse(v)
    if grad_cross(s, DELTA) != v:
        raise InconsistencyError("grad S x grad Delta does not reproduce the field")
    return s


def rate_of_change(F: Poly, v: VField) -> Poly:
    """dF/dt along v computed as {F, S(v)}; asserted equal to v(F)."""
    out = poisson_bracket(F, secondary_potential(v))
    if out != apply_to(v, F):
        raise InconsistencyError("Poisson rate of change disagrees with the derivation")
    return out


def bfrak_product_expansion(idx1: BfrakIndex, idx2: BfrakIndex) -> dict:
    """Expansion of a product of two bfrak generators over bfrak and Delta powers."""
    prod = make_bfrak(*idx1) * make_bfrak(*idx2)
    coeffs, casimir = decompose_bfrak(prod)
    return {**coeffs, **{("Delta", m): c for m, c in casimir.items()}}
