"""The A/B/C generator families and unique expansion of vector fields over them.

Every generator is an ad_N-orbit element of a highest-weight vector in
ker(ad_M):

* ``B^l_{i,k}`` from z^i Delta^k M,        -1 <= l <= 2i+1
* ``A^l_{i,k}`` from z^(i+1) Delta^k d/dx,  -2 <= l <= 2i+2 (i >= -1)
* ``C^l_{i,k}`` from z^i Delta^k E,          0 <= l <= 2i

All three carry H-weight 2(i - l), so expansions split into small blocks by
(polynomial degree, weight), each solved exactly.

The scalar counterparts ``bfrak^l_{i,k}`` (orbits of z^(i+1) Delta^k under
ad_x = {x, .}) span, together with the powers of Delta, all polynomials.
"""

from __future__ import annotations

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, NamedTuple

from .errors import InconsistencyError, PreconditionError
from .linsolve import solve_columns
from .ratpoly import DELTA, Poly, X, Y, Z, as_rational
from .sl2core import kappa, n_pow_z
from .vfield import VField, apply_to, divergence

FAMILIES = ("A", "B", "C")


class GenIndex(NamedTuple):
    family: str
    l: int
    i: int
    k: int

    def __str__(self) -> str:
        return f"{self.family}^{self.l}_{{{self.i},{self.k}}}"

    @property
    def weight(self) -> int:
        return 2 * (self.i - self.l)

    @property
    def degree(self) -> int:
        """Polynomial degree of the generator's components."""
        if self.family == "A":
            return self.i + 1 + 2 * self.k
        return self.i + 2 * self.k + 1


def B(l: int, i: int, k: int = 0) -> GenIndex:
    return GenIndex("B", l, i, k)


def l_bounds(family: str, i: int) -> tuple[int, int]:
    if family == "B":
        return -1, 2 * i + 1
    if family == "A":
        return -2, 2 * i + 2
    if family == "C":
        return 0, 2 * i
    raise PreconditionError(f"unknown generator family {family!r}", witness=family)


def check_index(idx: GenIndex) -> None:
    fam, l, i, k = idx
    lo_i = -1 if fam == "A" else 0
    if i < lo_i:
        raise PreconditionError(f"{idx}: need i >= {lo_i}", witness=idx)
    if k < 0:
        raise PreconditionError(f"{idx}: need k >= 0", witness=idx)
    lo, hi = l_bounds(fam, i)
    if not lo <= l <= hi:
        raise PreconditionError(f"{idx}: need {lo} <= l <= {hi}", witness=idx)


def _npz(q: int, i: int) -> Poly:
    # N^q(z^i) with N^q = 0 for q < 0 never reached by callers
    return n_pow_z(q, i)


def _term(num: int, q: int, e: int, lk: int, den_extra: int) -> Poly:
    """num * N^q(z^e) / (den_extra * kappa(lk, 2e)), or 0 when excluded."""
    if num == 0 or q < 0:
        return Poly()
    kap = kappa(lk, 2 * e)
    if kap == 0:
        return Poly()
    return _npz(q, e) * Fraction(num, den_extra * kap)


@lru_cache(maxsize=None)
def _b_generator(l: int, i: int) -> VField:
    e = i + 1
    cx = _term(2 * i - l + 1, l + 2, e, l + 2, e)
    cy = _term(i - l, l + 1, e, l + 1, e)
    cz = -_term(l + 1, l, e, l, e) if l >= 0 else Poly()
    return VField(cx, cy, cz)


@lru_cache(maxsize=None)
def _a_generator(l: int, i: int) -> VField:
    # ad_N^(l+2)(z^(i+1) d/dx), written out component-wise; normalisation
    # kappa(l+2, 2i+2) falls back to 1 where it vanishes (top of the module)
    e = i + 1
    n = l + 2
    kap = kappa(n, 2 * e) or 1
    cx = _npz(n, e)
    cy = _npz(n - 1, e) * (-n) if n >= 1 else Poly()
    cz = _npz(n - 2, e) * (n * (n - 1)) if n >= 2 else Poly()
    return VField(cx, cy, cz) * Fraction(1, kap)


@lru_cache(maxsize=None)
def _c_generator(l: int, i: int) -> VField:
    f = _npz(l, i) * Fraction(1, kappa(l, 2 * i))
    return VField(X * f, Y * f, Z * f)


@lru_cache(maxsize=None)
def make_generator(idx: GenIndex) -> VField:
    """Exact polynomial vector field of a generator index."""
    idx = GenIndex(*idx)
    check_index(idx)
    fam, l, i, k = idx
    if fam == "B":
        base = _b_generator(l, i)
    elif fam == "A":
        base = _a_generator(l, i)
    else:
        base = _c_generator(l, i)
    return base * DELTA**k if k else base


@lru_cache(maxsize=None)
def make_bfrak(l: int, i: int, k: int = 0) -> Poly:
    """-ad_x^(l+1)(z^(i+1) Delta^k) / ((i+1) kappa(l+1, 2i+2)), -1 <= l <= 2i+1.

    ad_x = {x, .} acts on polynomials in z exactly as N does.
    """
    if i < 0 or k < 0 or not -1 <= l <= 2 * i + 1:
        raise PreconditionError(
            f"bfrak^{l}_{{{i},{k}}}: need i, k >= 0 and -1 <= l <= {2 * i + 1}",
            witness=(l, i, k),
        )
    f = n_pow_z(l + 1, i + 1) * Fraction(-1, (i + 1) * kappa(l + 1, 2 * i + 2))
    return f * DELTA**k if k else f


# --- enumeration ---------------------------------------------------------------

def generators_of_degree(d: int, families: Iterable[str] = FAMILIES) -> list[GenIndex]:
    """All admissible generators whose components have polynomial degree d."""
    out = []
    fams = tuple(families)
    for k in range(d // 2 + 1):
        if "B" in fams or "C" in fams:
            i = d - 1 - 2 * k
            if i >= 0:
                if "B" in fams:
                    out.extend(GenIndex("B", l, i, k) for l in range(-1, 2 * i + 2))
                if "C" in fams:
                    out.extend(GenIndex("C", l, i, k) for l in range(0, 2 * i + 1))
        if "A" in fams:
            i = d - 1 - 2 * k
            if i >= -1:
                out.extend(GenIndex("A", l, i, k) for l in range(-2, 2 * i + 3))
    return out


def b_generators_of_grade(g: int) -> list[GenIndex]:
    return generators_of_degree(g + 1, ("B",))


def field_dimension(d: int) -> int:
    return 3 * (d + 2) * (d + 1) // 2


def monomial_weight(key) -> int:
    """H-weight of a coordinate (component j, monomial) of a vector field."""
    j, (a, b, c) = key
    return 2 * c - 2 * a + 2 - 2 * j


def _field_column(v: VField) -> dict:
    col = {}
    for j, comp in enumerate(v.components):
        for m, c in comp.items():
            col[(j, m)] = c
    return col


# --- expansions ----------------------------------------------------------------

class Expansion(dict):
    """GenIndex -> nonzero rational coefficient."""

    def __init__(self, data=None):
        super().__init__()
        if data:
            for idx, c in dict(data).items():
                c = as_rational(c)
                if c:
                    self[GenIndex(*idx)] = c

    def reconstruct(self) -> VField:
        return reconstruct(self)

    def families(self) -> set[str]:
        return {idx.family for idx in self}

    def sorted_items(self):
        return sorted(self.items(), key=lambda kv: _index_order(kv[0]))

    def records(self) -> list[dict]:
        out = []
        for idx, c in self.sorted_items():
            c = Fraction(c)
            out.append({"family": idx.family, "l": idx.l, "i": idx.i, "k": idx.k,
                        "num": c.numerator, "den": c.denominator})
        return out

    @classmethod
    def from_records(cls, records) -> "Expansion":
        return cls({GenIndex(r["family"], r["l"], r["i"], r["k"]): Fraction(r["num"], r["den"])
                    for r in records})

    def __add__(self, other):
        out = dict(self)
        for idx, c in other.items():
            out[idx] = out.get(idx, 0) + c
        return Expansion(out)

    def scale(self, c) -> "Expansion":
        c = as_rational(c)
        return Expansion({idx: v * c for idx, v in self.items()})

    def __str__(self) -> str:
        return format_expansion(self)


def _index_order(idx: GenIndex):
    return (idx.degree, FAMILIES.index(idx.family), idx.i, idx.k, idx.l)


def _fmt_coeff(c) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_expansion(e: Expansion) -> str:
    if not e:
        return "0"
    parts = []
    for n, (idx, c) in enumerate(e.sorted_items()):
        neg = c < 0
        a = -c if neg else c
        body = str(idx) if a == 1 else f"{_fmt_coeff(a)}*{idx}"
        if n == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def reconstruct(exp) -> VField:
    out = [{}, {}, {}]
    for idx, c in exp.items():
        g = make_generator(GenIndex(*idx))
        for j, comp in enumerate(g.components):
            d = out[j]
            for m, v in comp.items():
                d[m] = d.get(m, 0) + v * c
    return VField(*(Poly(d) for d in out))


@lru_cache(maxsize=None)
def _blocks(d: int, families: tuple[str, ...]) -> dict[int, list[GenIndex]]:
    blocks = defaultdict(list)
    for idx in generators_of_degree(d, families):
        blocks[idx.weight].append(idx)
    return dict(blocks)


def _solve_block(gens: list[GenIndex], rhs: dict) -> dict:
    cols = [_field_column(make_generator(g)) for g in gens]
    sol = solve_columns(cols, rhs, require_unique=True)
    return {g: c for g, c in zip(gens, sol) if c}


def decompose(v: VField, families: Iterable[str] = FAMILIES) -> Expansion:
    """Unique expansion of ``v`` over the generators.

    With the default families the per-block systems are square and
    nonsingular. Restricting ``families`` (e.g. to ``("B",)``) gives an
    overdetermined system, which raises :class:`InconsistencyError` if ``v``
    is not in the span.
    """
    fams = tuple(f for f in FAMILIES if f in set(families))
    out = {}
    by_block: dict[tuple[int, int], dict] = defaultdict(dict)
    for j, comp in enumerate(v.components):
        for m, c in comp.items():
            key = (j, m)
            by_block[(sum(m), monomial_weight(key))][key] = c
    for (d, w), rhs in sorted(by_block.items()):
        gens = _blocks(d, fams).get(w, [])
        if not gens:
            raise InconsistencyError(
                f"no generators for degree {d}, weight {w} in families {fams}"
            )
        try:
            out.update(_solve_block(gens, rhs))
        except InconsistencyError as exc:
            raise InconsistencyError(
                f"degree {d}, weight {w}: {exc}"
            ) from None
    return Expansion(out)


def decompose_b(v: VField) -> Expansion:
    """Expansion of a member of the B-span using B-generators only.

    Non-members are rejected up front with :class:`PreconditionError`.
    """
    require_b(v)
    return decompose(v, ("B",))


def membership_b(v: VField):
    """(True, None) if div v = 0 and v(Delta) = 0, else (False, (label, witness))."""
    div = divergence(v)
    if div:
        return False, ("divergence", div)
    vd = apply_to(v, DELTA)
    if vd:
        return False, ("v(Delta)", vd)
    return True, None


def require_b(v: VField) -> None:
    ok, wit = membership_b(v)
    if not ok:
        label, poly = wit
        raise PreconditionError(f"field is not in the B-span: {label} = {poly}", witness=wit)


# --- scalar (bfrak) expansions -------------------------------------------------------

class BfrakIndex(NamedTuple):
    l: int
    i: int
    k: int

    def __str__(self) -> str:
        return f"b^{self.l}_{{{self.i},{self.k}}}"


def bfrak_of_degree(d: int) -> list[BfrakIndex]:
    out = []
    for k in range(d // 2 + 1):
        i = d - 1 - 2 * k
        if i >= 0:
            out.extend(BfrakIndex(l, i, k) for l in range(-1, 2 * i + 2))
    return out


def decompose_bfrak(f: Poly):
    """Split ``f`` into bfrak-generators plus Casimir powers of Delta.

    Returns (coeffs, casimir) with ``coeffs`` a dict BfrakIndex -> rational and
    ``casimir`` a dict m -> coefficient of Delta^m.
    """
    by_block: dict[tuple[int, int], dict] = defaultdict(dict)
    for m, c in f.items():
        a, b, cc = m
        by_block[(sum(m), 2 * cc - 2 * a)][m] = c
    coeffs, casimir = {}, {}
    for (d, w), rhs in sorted(by_block.items()):
        cols, keys = [], []
        for idx in bfrak_of_degree(d):
            if 2 * (idx.i - idx.l) == w:
                keys.append(idx)
                cols.append(dict(make_bfrak(*idx).items()))
        if w == 0 and d % 2 == 0:
            keys.append(("Delta", d // 2))
            cols.append(dict((DELTA ** (d // 2)).items()))
        if not keys:
            raise InconsistencyError(f"no scalar generators for degree {d}, weight {w}")
        sol = solve_columns(cols, rhs)
        for key, c in zip(keys, sol):
            if c:
                if isinstance(key, BfrakIndex):
                    coeffs[key] = c
                else:
                    casimir[key[1]] = c
    return coeffs, casimir
