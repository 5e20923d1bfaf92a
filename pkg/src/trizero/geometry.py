"""First integrals, Clebsch form and vector potentials of B-span members."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bases import require_b
from .errors import InconsistencyError, PreconditionError
from .poisson import secondary_potential
from .ratpoly import DELTA, Poly
from .vfield import POSITION, VField, cross, curl, divergence, grad_cross, gradient


@dataclass(frozen=True)
class PotentialPair:
    primary: Poly
    secondary: Poly


@dataclass(frozen=True)
class VectorPotential:
    field: VField
    gauge_class: str  # "deltaForm" or "radialForm"


def clebsch_form(v: VField) -> PotentialPair:
    """(Delta, S(v)) with v = grad S x grad Delta."""
    require_b(v)
    s = secondary_potential(v)
    if grad_cross(s, DELTA) != v:
        raise InconsistencyError("Clebsch pair does not reproduce the field")
    return PotentialPair(DELTA, s)


def vector_potential_delta(v: VField) -> VectorPotential:
    """S(v) grad Delta, whose curl is grad S x grad Delta = v."""
    require_b(v)
    s = secondary_potential(v)
    pot = gradient(DELTA) * s
    if curl(pot) != v:
        raise InconsistencyError("curl of the Delta-form potential differs from the field")
    return VectorPotential(pot, "deltaForm")


def vector_potential_radial(v: VField) -> VectorPotential:
    """Homotopy-operator potential: each degree-d slice contributes v_d x X / (d + 2)."""
    div = divergence(v)
    if div:
        raise PreconditionError(f"field is not divergence-free: div = {div}", witness=div)
    if 0 in v.degrees():
        raise PreconditionError("field has a constant term", witness=v.homogeneous_part(0))
    pot = VField.zero()
    for d, part in v.slices().items():
        pot = pot + cross(part, POSITION) * Fraction(1, d + 2)
    if curl(pot) != v:
        raise InconsistencyError("curl of the radial potential differs from the field")
    return VectorPotential(pot, "radialForm")


def antigradient(w: VField) -> Poly:
    """f with grad f = w and zero constant term; rejects non-gradients.

    Integrates in x, then corrects in y, then in z.
    """
    if curl(w):
        raise PreconditionError("difference of potentials is not a gradient", witness=curl(w))
    f = _integrate(w.cx, 0)
    rest = w.cy - f.diff(1)
    f = f + _integrate(rest, 1)
    rest = w.cz - f.diff(2)
    f = f + _integrate(rest, 2)
    f = f - f.constant_term()
    if gradient(f) != w:
        raise InconsistencyError("antidifferentiation failed to reproduce the gradient")
    return f


def _integrate(p: Poly, var: int) -> Poly:
    d = {}
    for m, c in p.items():
        e = list(m)
        e[var] += 1
        d[tuple(e)] = Fraction(c) / e[var]
    return Poly(d)


def gauge_difference(p1, p2) -> Poly:
    """f with p1 + grad f = p2 (normalised to zero constant term)."""
    f1 = p1.field if isinstance(p1, VectorPotential) else p1
    f2 = p2.field if isinstance(p2, VectorPotential) else p2
    return antigradient(f2 - f1)


def rotational_check(v: VField):
    """("gradientLike", None) when curl v = 0, else ("rotational", (component, poly))."""
    c = curl(v)
    for j, comp in enumerate(c.components):
        if comp:
            return "rotational", (j, comp)
    return "gradientLike", None


def gradient_rank(f: Poly, g: Poly, point) -> int:
    """Rank of the 2x3 matrix (grad f; grad g) at a rational point."""
    r1 = [Fraction(c) for c in gradient(f).eval_at(point)]
    r2 = [Fraction(c) for c in gradient(g).eval_at(point)]
    if not any(r1) and not any(r2):
        return 0
    minors = [r1[a] * r2[b] - r1[b] * r2[a] for a, b in ((0, 1), (0, 2), (1, 2))]
    return 2 if any(minors) else 1
