"""Polynomial vector fields on R^3 and the usual vector calculus.

A :class:`VField` doubles as the first-order differential operator
``cx d/dx + cy d/dy + cz d/dz``; which reading is meant depends on the
operation (``apply_to`` versus ``lie_bracket``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .ratpoly import Poly, Scalar, X, Y, Z, as_rational, format_poly


@dataclass(frozen=True)
class VField:
    cx: Poly
    cy: Poly
    cz: Poly

    def __post_init__(self):
        for name in ("cx", "cy", "cz"):
            v = getattr(self, name)
            if not isinstance(v, Poly):
                object.__setattr__(self, name, Poly.coerce(v))

    @classmethod
    def zero(cls) -> "VField":
        return cls(Poly(), Poly(), Poly())

    @property
    def components(self) -> tuple[Poly, Poly, Poly]:
        return (self.cx, self.cy, self.cz)

    def __iter__(self):
        return iter(self.components)

    def __getitem__(self, j: int) -> Poly:
        return self.components[j]

    def __add__(self, other: "VField") -> "VField":
        if not isinstance(other, VField):
            return NotImplemented
        return VField(self.cx + other.cx, self.cy + other.cy, self.cz + other.cz)

    def __sub__(self, other: "VField") -> "VField":
        if not isinstance(other, VField):
            return NotImplemented
        return VField(self.cx - other.cx, self.cy - other.cy, self.cz - other.cz)

    def __neg__(self) -> "VField":
        return VField(-self.cx, -self.cy, -self.cz)

    def __mul__(self, c) -> "VField":
        """Scale by a rational or multiply each component by a polynomial."""
        if isinstance(c, VField):
            return NotImplemented
        if isinstance(c, Poly):
            return VField(self.cx * c, self.cy * c, self.cz * c)
        c = as_rational(c)
        return VField(self.cx.scale(c), self.cy.scale(c), self.cz.scale(c))

    __rmul__ = __mul__

    def scale(self, c) -> "VField":
        return self * as_rational(c)

    def __bool__(self) -> bool:
        return bool(self.cx or self.cy or self.cz)

    def is_zero(self) -> bool:
        return not self

    @property
    def degree(self) -> int:
        return max(self.cx.degree, self.cy.degree, self.cz.degree)

    def degrees(self) -> set[int]:
        return self.cx.degrees() | self.cy.degrees() | self.cz.degrees()

    def homogeneous_part(self, d: int) -> "VField":
        return VField(*(c.homogeneous_part(d) for c in self))

    def truncate(self, max_degree: int) -> "VField":
        return VField(*(c.truncate(max_degree) for c in self))

    def slices(self) -> dict[int, "VField"]:
        """Split into homogeneous pieces keyed by polynomial degree."""
        return {d: self.homogeneous_part(d) for d in sorted(self.degrees())}

    def eval_at(self, point) -> tuple[Scalar, Scalar, Scalar]:
        return tuple(c.eval_at(point) for c in self)

    def __str__(self) -> str:
        return format_field(self)


def format_field(v: VField, named: bool = False) -> str:
    if named:
        return "; ".join(f"{n}={format_poly(c)}" for n, c in zip(("dx", "dy", "dz"), v))
    return "(" + ", ".join(format_poly(c) for c in v) + ")"


def apply_to(v: VField, f: Poly) -> Poly:
    """Derivation action of ``v`` on the scalar ``f``."""
    out = Poly()
    for j, c in enumerate(v.components):
        if c:
            d = f.diff(j)
            if d:
                out = out + c * d
    return out


def lie_bracket(v: VField, w: VField) -> VField:
    """[v, w] with components v(w_j) - w(v_j)."""
    return VField(*(apply_to(v, wj) - apply_to(w, vj) for vj, wj in zip(v, w)))


def divergence(v: VField) -> Poly:
    return v.cx.diff(0) + v.cy.diff(1) + v.cz.diff(2)


def curl(v: VField) -> VField:
    p, q, r = v.components
    return VField(r.diff(1) - q.diff(2), p.diff(2) - r.diff(0), q.diff(0) - p.diff(1))


def gradient(f: Poly) -> VField:
    return VField(f.diff(0), f.diff(1), f.diff(2))


def cross(a: VField, b: VField) -> VField:
    a1, a2, a3 = a.components
    b1, b2, b3 = b.components
    return VField(a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1)


def grad_cross(f: Poly, g: Poly) -> VField:
    """The field grad(f) x grad(g)."""
    return cross(gradient(f), gradient(g))


POSITION = VField(X, Y, Z)
