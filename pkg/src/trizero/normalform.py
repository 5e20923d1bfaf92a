"""Normal forms of B-span members with nilpotent linear part.

Grade by grade, every B^l_{i,k} with l >= 0 is removed by the generator
B^(l-1)_{i,k} / (l - 2i - 2), since [B^1_00, B^(l-1)_ik] = (l - 2i - 2) B^l_ik.
What survives is the kernel of ad_M, spanned by B^-1_{i,k} = z^i Delta^k M.
Coordinate changes are applied as truncated Lie series exp(ad_Y) v.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Mapping

from .bases import Expansion, GenIndex, decompose_b, make_generator, reconstruct, require_b
from .errors import InconsistencyError, PreconditionError
from .linsolve import solve_columns
from .poisson import secondary_potential
from .ratpoly import DELTA, Poly, X, Y, Z, as_rational
from .sl2core import M, N
from .vfield import VField, apply_to, divergence, lie_bracket

LINEAR_PART = -N  # B^1_{0,0}


@dataclass(frozen=True)
class NFResult:
    """Outcome of :func:`normalize`.

    ``coeffs`` maps (i, k) to the coefficient of B^-1_{i,k} = z^i Delta^k M.
    ``p`` is the least i with a nonzero (i, 0) coefficient; None when the
    field is linearizable through ``max_grade`` or only Delta-multiples survive.
    """

    p: int | None
    coeffs: dict
    generators_used: list
    transformed_field: VField
    invariant_i: Poly
    max_grade: int
    time_scale: Fraction = Fraction(1)
    rescaling: dict = field(default_factory=dict)

    @property
    def linearizable(self) -> bool:
        return not self.coeffs

    @property
    def p_label(self):
        if self.linearizable:
            return "linearizable"
        return self.p if self.p is not None else "undetermined"

    def to_json(self) -> dict:
        return {
            "p": self.p_label,
            "coeffs": [
                {"i": i, "k": k, "num": Fraction(c).numerator, "den": Fraction(c).denominator}
                for (i, k), c in sorted(self.coeffs.items(), key=lambda kv: (kv[0][0] + 2 * kv[0][1], kv[0]))
            ],
            "invariantI": str(self.invariant_i),
            "linearizable": self.linearizable,
        }


def lie_exp(gen: VField, v: VField, max_degree: int) -> VField:
    """exp(ad_gen) v = v + [gen, v] + [gen, [gen, v]]/2 + ..., truncated by degree."""
    out = v.truncate(max_degree)
    term = out
    n = 1
    while True:
        term = lie_bracket(gen, term).truncate(max_degree) * Fraction(1, n)
        if not term:
            return out
        out = out + term
        n += 1


def _linear_scale(v: VField) -> Fraction:
    lin = v.homogeneous_part(1)
    c = -Fraction(lin.cy.coeff(1, 0, 0))
    if not c or lin != LINEAR_PART * c:
        raise PreconditionError(
            f"linear part {lin} is not a nonzero multiple of -N", witness=lin
        )
    return c


def removal_generator(exp: Mapping) -> Expansion:
    """Generator cancelling the l >= 0 part of a single-grade expansion."""
    out = {}
    for idx, c in exp.items():
        _, l, i, k = idx
        if l >= 0:
            den = l - 2 * i - 2
            if den == 0:
                raise InconsistencyError(f"no removal generator for {idx}")
            out[GenIndex("B", l - 1, i, k)] = Fraction(c) / den
    return Expansion(out)


def normalize(v: VField, max_grade: int, strategy: str = "grade") -> NFResult:
    """Normal form of ``v`` through grade ``max_grade`` (polynomial degree max_grade + 1).

    ``strategy`` is "grade" (one Lie series per grade) or "term" (one per
    generator term, in reverse index order); both must give the same result.
    """
    if max_grade < 0:
        raise PreconditionError("max_grade must be non-negative", witness=max_grade)
    require_b(v)
    if 0 in v.degrees():
        raise PreconditionError("field has a constant term", witness=v.homogeneous_part(0))
    c = _linear_scale(v)
    max_deg = max_grade + 1
    w = (v * (Fraction(1) / c)).truncate(max_deg)
    used = []
    for g in range(1, max_grade + 1):
        part = w.homogeneous_part(g + 1)
        if not part:
            continue
        gen = removal_generator(decompose_b(part))
        if not gen:
            continue
        used.append((g, gen))
        if strategy == "grade":
            w = lie_exp(reconstruct(gen), w, max_deg)
        elif strategy == "term":
            for idx, cf in sorted(gen.items(), reverse=True):
                w = lie_exp(make_generator(idx) * cf, w, max_deg)
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
        left = decompose_b(w.homogeneous_part(g + 1))
        if any(idx.l != -1 for idx in left):
            raise InconsistencyError(f"grade {g} not normalized: {left}")
    return _finish(w, max_grade, c, used)


def _finish(w: VField, max_grade: int, time_scale, used, rescaling=None) -> NFResult:
    exp = decompose_b(w)
    coeffs = {}
    for idx, cf in exp.items():
        if idx == GenIndex("B", 1, 0, 0):
            if cf != 1:
                raise InconsistencyError("linear part changed during normalization")
            continue
        if idx.l != -1:
            raise InconsistencyError(f"non-normal term {idx} left in the normal form")
        coeffs[(idx.i, idx.k)] = cf
    pk = [i for (i, k) in coeffs if k == 0]
    p = min(pk) if pk else None
    inv = invariant_from_coeffs(coeffs)
    if secondary_potential(w) != inv:
        raise InconsistencyError("secondary potential of the normal form differs from I")
    return NFResult(p, coeffs, used, w, inv, max_grade, Fraction(time_scale), dict(rescaling or {}))


def invariant_from_coeffs(coeffs: Mapping) -> Poly:
    """x + sum b_{i,k} z^(i+1) Delta^k / (i+1)."""
    out = X
    for (i, k), c in coeffs.items():
        out = out + Z ** (i + 1) * DELTA**k * (Fraction(c) / (i + 1))
    return out


def normal_form_field(coeffs: Mapping) -> VField:
    """B^1_00 + sum b_{i,k} B^-1_{i,k}."""
    out = LINEAR_PART
    for (i, k), c in coeffs.items():
        out = out + make_generator(GenIndex("B", -1, i, k)) * as_rational(c)
    return out


def secondary_invariant(nf: NFResult) -> Poly:
    """The first integral I of the normal form, checked against the field."""
    if nf.linearizable:
        raise PreconditionError("normal form is linearizable; no secondary invariant")
    inv = invariant_from_coeffs(nf.coeffs)
    if apply_to(nf.transformed_field, inv):
        raise InconsistencyError("I is not a first integral of the normal form")
    if inv != secondary_potential(nf.transformed_field):
        raise InconsistencyError("I differs from the secondary potential")
    return inv


# --- rescaling ----------------------------------------------------------------------

def _bezout(a: int, b: int) -> tuple[int, int]:
    """(m, n) with m a + n b = gcd(a, b)."""
    if b == 0:
        return 1, 0
    m, n = _bezout(b, a % b)
    return n, m - (a // b) * n


def _rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def scale_coeffs(coeffs: Mapping, alpha, t) -> dict:
    """Coefficients after X = alpha x, Y = t alpha y, Z = t^2 alpha z, time scaled by t."""
    alpha, t = Fraction(alpha), Fraction(t)
    return {(i, k): Fraction(c) / (t ** (2 * (i + k + 1)) * alpha ** (i + 2 * k))
            for (i, k), c in coeffs.items()}


def scale_field(v: VField, alpha, t) -> VField:
    """The same scaling applied to a field by substitution."""
    alpha, t = Fraction(alpha), Fraction(t)
    sx, sy, sz = alpha, t * alpha, t * t * alpha
    sub = (X * (1 / sx), Y * (1 / sy), Z * (1 / sz))
    comps = [c.compose(*sub) for c in v.components]
    return VField(comps[0] * (sx / t), comps[1] * (sy / t), comps[2] * (sz / t))


def rescale_leading(nf: NFResult) -> NFResult:
    """Rescale so that b_{p,0} becomes 1 (or -1 when only that is reachable).

    ``rescaling`` on the result records alpha, t, the reached target and
    whether the target is exactly 1. For even p a negative or non-square
    b_{p,0} cannot reach +1 over the rationals; the target is then -1 when
    |b| is a rational square and the input is returned unscaled otherwise.
    """
    if nf.linearizable or nf.p is None:
        raise PreconditionError("rescaling needs a determined leading index p", witness=nf.p_label)
    p = nf.p
    b = Fraction(nf.coeffs[(p, 0)])
    if p % 2 == 1:
        m, n = _bezout(p, 2 * p + 2)
        alpha, t = b**m, b**n
        target = Fraction(1)
    else:
        root = _rational_sqrt(abs(b))
        if root is None:
            return replace(nf, rescaling={"alpha": Fraction(1), "t": Fraction(1),
                                          "target": b, "exact": False,
                                          "reason": "leading coefficient is not a rational square"})
        m, n = _bezout(p // 2, p + 1)
        alpha, t = root**m, root**n
        target = Fraction(1) if b > 0 else Fraction(-1)
    coeffs = scale_coeffs(nf.coeffs, alpha, t)
    if coeffs[(p, 0)] != target:
        raise InconsistencyError("rescaling missed its target")
    w = scale_field(nf.transformed_field, alpha, t)
    if w != normal_form_field(coeffs):
        raise InconsistencyError("scaled field is not of normal-form shape")
    require_b(w)
    info = {"alpha": alpha, "t": t, "target": target, "exact": target == 1}
    return _finish(w, nf.max_grade, nf.time_scale, nf.generators_used, info)


# --- Hamiltonian reduction ----------------------------------------------------------

@dataclass(frozen=True)
class PlanarHamiltonian:
    """Reduced planar system.

    Polynomials are in the slots (X, Y, Z); in ``hamiltonian`` the X slot
    stands for the conserved value c.
    """

    hamiltonian: Poly
    reduced_field: VField
    transform: Poly

    def check_contract(self) -> bool:
        h = self.hamiltonian
        f = self.reduced_field
        return (not f.cx) and f.cz == -h.diff(1) and f.cy == h.diff(2)

    def to_json(self) -> dict:
        names = ("X", "Y", "Z")
        from .ratpoly import format_poly

        return {
            "H": format_poly(self.hamiltonian, ("c", "Y", "Z")),
            "dX": format_poly(self.reduced_field.cx, names),
            "dY": format_poly(self.reduced_field.cy, names),
            "dZ": format_poly(self.reduced_field.cz, names),
            "X": format_poly(self.transform),
        }


def single_index_coeffs(nf: NFResult) -> dict[int, Fraction]:
    if nf.linearizable or nf.p is None:
        raise PreconditionError("Hamiltonian reduction needs a determined p", witness=nf.p_label)
    mixed = [key for key in nf.coeffs if key[1] != 0]
    if mixed:
        raise PreconditionError(
            f"normal form carries Delta-multiples {sorted(mixed)}; need pure z^i M terms",
            witness=sorted(mixed),
        )
    return {i: Fraction(c) for (i, _), c in nf.coeffs.items()}


def hamiltonian_reduce(nf: NFResult) -> PlanarHamiltonian:
    """Push the normal form forward by X = x + sum b_i z^(i+1)/(i+1), Y = y, Z = z."""
    b = single_index_coeffs(nf)
    w = nf.transformed_field
    shift = Poly()
    for i, c in b.items():
        shift = shift + Z ** (i + 1) * (c / (i + 1))
    transform = X + shift
    # inverse substitution x = X - shift(Z)
    inv = (X - shift, Y, Z)
    comps = [apply_to(w, transform), apply_to(w, Y), apply_to(w, Z)]
    reduced = VField(*(c.compose(*inv) for c in comps))
    if reduced.cx:
        raise InconsistencyError(f"X is not conserved: dX = {reduced.cx}")
    expected_y = -X
    ham = Y**2 - X * Z
    for i, c in b.items():
        expected_y = expected_y + Z ** (i + 1) * (c * (i + 2) / (i + 1))
        ham = ham + Z ** (i + 2) * (c / (i + 1))
    if reduced != VField(Poly(), expected_y, Y * -2):
        raise InconsistencyError("reduced field differs from the expected planar form")
    out = PlanarHamiltonian(ham, reduced, transform)
    if not out.check_contract():
        raise InconsistencyError("Hamiltonian does not regenerate the reduced field")
    return out


def single_index_field(b: Mapping[int, object]) -> VField:
    """-N + sum_i b_i z^i M."""
    out = LINEAR_PART
    for i, c in b.items():
        out = out + M * (Z**i * as_rational(c))
    return out


# --- cubic truncations and the quartic closed form ------------------------------------

CUBIC_FREE = (
    "b002", "b011", "a110", "b110", "b200",
    "b003", "b021", "b102", "c003", "c021", "c102", "b120", "b201", "a300", "b300",
)


def _cubic_names():
    out = []
    for d in (2, 3):
        for a in range(d, -1, -1):
            for bb in range(d - a, -1, -1):
                c = d - a - bb
                for comp in "abc":
                    out.append(f"{comp}{a}{bb}{c}")
    return out


CUBIC_NAMES = tuple(_cubic_names())


def _name_field(name: str, value=1) -> VField:
    comp = "abc".index(name[0])
    m = Poly.monomial(int(name[1]), int(name[2]), int(name[3]), value)
    parts = [Poly(), Poly(), Poly()]
    parts[comp] = m
    return VField(*parts)


def _constraint_column(name: str) -> dict:
    v = _name_field(name)
    col = {}
    for m, c in divergence(v).items():
        col[("div", m)] = c
    for m, c in apply_to(v, DELTA).items():
        col[("delta", m)] = c
    return col


def cubic_coefficients(free: Mapping[str, object]) -> dict[str, Fraction]:
    """All 48 quadratic/cubic coefficients from the 15 free ones.

    The dependent ones are solved from div v = 0 and v(Delta) = 0. Values
    given for dependent names are checked against the solution.
    """
    unknown = set(free) - set(CUBIC_NAMES)
    if unknown:
        raise PreconditionError(f"unknown coefficient names {sorted(unknown)}", witness=sorted(unknown))
    vals = {n: as_rational(free.get(n, 0)) for n in CUBIC_FREE}
    dep = [n for n in CUBIC_NAMES if n not in CUBIC_FREE]
    rhs: dict = {}
    for n, c in vals.items():
        if c:
            for key, a in _constraint_column(n).items():
                rhs[key] = rhs.get(key, 0) - a * c
    sol = solve_columns([_constraint_column(n) for n in dep], rhs)
    out = dict(vals)
    out.update({n: Fraction(s) for n, s in zip(dep, sol)})
    for n in dep:
        if n in free and as_rational(free[n]) != out[n]:
            raise PreconditionError(
                f"{n} = {free[n]} violates the constraints (need {n} = {out[n]})",
                witness=n,
            )
    return {n: Fraction(c) for n, c in out.items()}


def cubic_field(coeffs: Mapping[str, object]) -> VField:
    """-N plus the quadratic and cubic terms named a_ijk, b_ijk, c_ijk."""
    full = cubic_coefficients({n: c for n, c in coeffs.items() if n in CUBIC_FREE} | {
        n: c for n, c in coeffs.items() if n not in CUBIC_FREE})
    out = LINEAR_PART
    for n, c in full.items():
        if c:
            out = out + _name_field(n, c)
    return out


def cubic_d_expansion(c: Mapping[str, object]) -> Expansion:
    """Closed-form B-expansion of the constrained cubic field."""
    g = {n: as_rational(c.get(n, 0)) for n in CUBIC_FREE}
    F5 = Fraction(1, 5)
    d = {
        (1, 0, 0): 1,
        (-1, 1, 0): g["b002"],
        (0, 1, 0): 2 * g["b011"],
        (1, 1, 0): g["a110"],
        (2, 1, 0): -2 * g["b110"],
        (3, 1, 0): -g["b200"],
        (-1, 0, 1): F5 * (4 * g["b102"] - g["b021"]),
        (0, 0, 1): F5 * (g["c021"] - 4 * g["c102"]),
        (1, 0, 1): F5 * (g["b120"] - 4 * g["b201"]),
        (-1, 2, 0): g["b003"],
        (0, 2, 0): -3 * g["c003"],
        (1, 2, 0): 3 * g["b021"] + 3 * g["b102"],
        (2, 2, 0): -(g["c021"] + g["c102"]),
        (3, 2, 0): -(3 * g["b201"] + 3 * g["b120"]),
        (4, 2, 0): 3 * g["a300"],
        (5, 2, 0): -g["b300"],
    }
    return Expansion({GenIndex("B", *key): val for key, val in d.items()})


def quartic_closed_form(free: Mapping[str, object]) -> dict:
    """Closed-form quartic normal-form coefficients of the constrained cubic field.

    Returns {"coeffs": {(i, k): b}, "d": Expansion}. Inputs outside the free
    set are checked against the constraints.
    """
    cubic_coefficients(free)  # validates names and any dependent values
    g = {n: as_rational(free.get(n, 0)) for n in CUBIC_FREE}
    b002, b011, a110, b110, b200 = (g[n] for n in ("b002", "b011", "a110", "b110", "b200"))
    b003, b021, b102, c003 = (g[n] for n in ("b003", "b021", "b102", "c003"))
    c021, c102, b120, b201 = (g[n] for n in ("c021", "c102", "b120", "b201"))
    Fr = Fraction
    b10 = b002
    b20 = b003 + b002 * a110 / Fr(2) - Fr(3, 4) * b011**2
    b01 = a110**2 / Fr(60) + b110 * b011 / Fr(5) - b200 * b002 / Fr(5) + (4 * b102 - b021) / Fr(5)
    b11 = (
        -a110**3 / Fr(378)
        - b110**2 * b002 / Fr(7)
        + (4 * c102 - c021) * b011 / Fr(15)
        + b011**2 * b200 / Fr(21)
        + 12 * (b201 + b120) * b002 / Fr(105)
        + 8 * b110 * c003 / Fr(21)
        + 12 * (b021 + b102) * a110 / Fr(105)
        - 4 * b200 * b003 / Fr(7)
        + 2 * b011 * (c021 + c102) / Fr(35)
        - 2 * b200 * b002 * a110 / Fr(21)
        - 2 * b110 * b011 * a110 / Fr(63)
        + Fr(2, 5) * (b120 - 4 * b201) * b002
        + (4 * b102 - b021) * a110 / Fr(15)
    )
    b30 = (
        2 * b003 * a110 / Fr(3)
        - 6 * b110 * b002 * b011 / Fr(5)
        + 4 * (3 * b021 + 3 * b102) * b002 / Fr(15)
        - 6 * b200 * b002**2 / Fr(5)
        + b002 * a110**2 / Fr(10)
        + 2 * c003 * b011
    )
    coeffs = {(1, 0): b10, (2, 0): b20, (0, 1): b01, (1, 1): b11, (3, 0): b30}
    return {"coeffs": {k: Fraction(v) for k, v in coeffs.items()}, "d": cubic_d_expansion(g)}


def quartic_invariant_closed_form(coeffs: Mapping) -> Poly:
    """First integral I of the quartic normal form as given in closed form."""
    b10 = as_rational(coeffs.get((1, 0), 0))
    b20 = as_rational(coeffs.get((2, 0), 0))
    b01 = as_rational(coeffs.get((0, 1), 0))
    b11 = as_rational(coeffs.get((1, 1), 0))
    b30 = as_rational(coeffs.get((3, 0), 0))
    inner = (X * Z * b11 - Y**2 * b11 + 4 * b10 + Z**2 * (2 * b01)
             + Z**2 * (Fraction(b30) / 2) + Z * (Fraction(2 * b20) / 3))
    return X - Z * Y**2 * b01 + Z**2 * inner * Fraction(1, 2)


def quartic_normal_form_closed(coeffs: Mapping) -> VField:
    """The quartic normal-form field written out in x, y, z."""
    b10 = as_rational(coeffs.get((1, 0), 0))
    b20 = as_rational(coeffs.get((2, 0), 0))
    b01 = as_rational(coeffs.get((0, 1), 0))
    b11 = as_rational(coeffs.get((1, 1), 0))
    b30 = as_rational(coeffs.get((3, 0), 0))
    dpart = DELTA * (Z * b11 + b01)
    zpart = Z * (Z**2 * b30 + Z * b20 + b10)
    return VField(Y * 2 * (dpart + zpart), -X + Z * dpart + Z * zpart, Y * -2)
