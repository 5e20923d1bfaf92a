"""Lie algebra structure of the B-span: brackets in basis coordinates.

``bracket_in_basis`` is the reference path (bracket the fields, then expand).
``structure_constants_closed`` reaches the same numbers through the product
re-expansion coefficients of :mod:`trizero.sl2core`, touching only
polynomials in z and N-powers of them, and falls back to the reference path
whenever one of its guards fails.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .bases import Expansion, GenIndex, check_index, decompose_b, make_generator
from .errors import InconsistencyError, PreconditionError
from .sl2core import kappa, reexpand_product
from .vfield import lie_bracket


def _require_b(idx) -> GenIndex:
    idx = GenIndex(*idx)
    if idx.family != "B":
        raise PreconditionError(f"{idx} is not a B-generator", witness=idx)
    check_index(idx)
    return idx


def grade(idx) -> int:
    idx = _require_b(idx)
    return idx.i + 2 * idx.k


@lru_cache(maxsize=None)
def _bracket_cached(a: GenIndex, b: GenIndex) -> tuple:
    v = lie_bracket(make_generator(a), make_generator(b))
    exp = decompose_b(v)
    if exp.reconstruct() != v:
        raise InconsistencyError(f"[{a}, {b}] does not re-expand exactly")
    return tuple(exp.items())


def bracket_in_basis(a, b) -> Expansion:
    """[a, b] expanded over B-generators (exact)."""
    a, b = _require_b(a), _require_b(b)
    if a == b:
        return Expansion()
    # cache on the ordered pair, flip sign for the other order
    if a <= b:
        return Expansion(dict(_bracket_cached(a, b)))
    return Expansion(dict(_bracket_cached(b, a))).scale(-1)


SPECIAL = {GenIndex("B", 0, 0, 0), GenIndex("B", 1, 0, 0), GenIndex("B", -1, 0, 0)}


def special_bracket(a, b) -> Expansion:
    """Brackets with B^0_{0,0}, B^1_{0,0}, B^{-1}_{0,0} in closed form.

    [B^0_00, B^l_ik]  = (l - i) B^l_ik
    [B^1_00, B^l_ik]  = (l - 2i - 1) B^(l+1)_ik
    [B^-1_00, B^l_ik] = (l + 1) B^(l-1)_ik
    A left argument B^-1_{p,0} goes through :func:`bracket_in_basis`.
    """
    a, b = _require_b(a), _require_b(b)
    _, l, i, k = b
    if a.l == 0 and a.i == 0 and a.k == 0:
        return Expansion({b: l - i})
    if a.l == 1 and a.i == 0 and a.k == 0:
        c = l - 2 * i - 1
        return Expansion({GenIndex("B", l + 1, i, k): c}) if c else Expansion()
    if a.l == -1 and a.k == 0:
        if a.i == 0:
            c = l + 1
            return Expansion({GenIndex("B", l - 1, i, k): c}) if c else Expansion()
        return bracket_in_basis(a, b)
    raise PreconditionError(f"no closed form for a left argument {a}", witness=a)


# --- closed-form structure constants ----------------------------------------------

class FallbackCounter:
    """Counts structure-constant evaluations that needed the reference path."""

    def __init__(self):
        self.count = 0
        self.pairs: list[tuple[GenIndex, GenIndex, str]] = []

    def record(self, a, b, reason):
        self.count += 1
        self.pairs.append((a, b, reason))

    def reset(self):
        self.count = 0
        self.pairs.clear()


FALLBACKS = FallbackCounter()


def _kap(l, i):
    return kappa(l, i) if l >= 0 else 0


def _third_coeffs(q1, i1, q2, i2):
    """Weights of N^(q1+3-p)(z^(i1+1)) N^(q2-3+p)(z^i2) in (B1 B2)_z, p = 1, 2, 3."""
    k2 = _kap(q2, 2 * i2 + 2)
    d1 = (i1 + 1) * k2
    out = {}
    if not k2:
        return out
    kk = _kap(q1 + 2, 2 * i1 + 2)
    num = -(2 * i1 - q1 + 1) * (q2 - 1) * q2 * (q2 + 1)
    if num and kk:
        out[1] = Fraction(num, d1 * kk)
    kk = _kap(q1 + 1, 2 * i1 + 2)
    num = -2 * q2 * (q2 + 1) * (i1 - q1)
    if num and kk:
        out[2] = Fraction(num, d1 * kk)
    kk = _kap(q1, 2 * i1 + 2)
    num = (q1 + 1) * (q2 + 1)
    if num and kk:
        out[3] = Fraction(num, d1 * kk)
    return out


def _second_coeffs(q1, i1, q2, i2):
    """Weights of N^(q1+3-p)(z^(i1+1)) N^(q2-2+p)(z^i2) in (B1 B2)_y, p = 1, 2, 3."""
    k2 = _kap(q2 + 1, 2 * i2 + 2)
    d1 = (i1 + 1) * k2
    out = {}
    if not k2:
        return out
    kk = _kap(q1 + 2, 2 * i1 + 2)
    num = (i2 - q2) * (q2 + 1) * q2 * (2 * i1 - q1 + 1)
    if num and kk:
        out[1] = Fraction(num, d1 * kk)
    kk = _kap(q1 + 1, 2 * i1 + 2)
    num = 2 * (q2 + 1) * (i2 - q2) * (i1 - q1)
    if num and kk:
        out[2] = Fraction(num, d1 * kk)
    kk = _kap(q1, 2 * i1 + 2)
    num = -(q1 + 1) * (i2 - q2)
    if num and kk:
        out[3] = Fraction(num, d1 * kk)
    return out


def _product_sum(weights, q1, i1, q2, i2, shift, j):
    """sum_p weight_p * C_j of N^(q1+3-p)(z^(i1+1)) N^(q2+shift+p)(z^i2)."""
    total = Fraction(0)
    for p, w in weights.items():
        a, b = q1 + 3 - p, q2 + shift + p
        if a < 0 or b < 0:
            continue
        total += w * reexpand_product(a, b, i1 + 1, i2).get(j, 0)
    return total


def _closed_form(a: GenIndex, b: GenIndex) -> Expansion | None:
    _, q1, i1, k1 = a
    _, q2, i2, k2 = b
    s1, r1 = divmod(q1, 2)
    s2, r2 = divmod(q2, 2)
    rho = abs(r2 - r1)
    f = (r1 + r2) // 2
    sigma2 = q1 + q2 - i1 - i2
    top = s1 + s2 + f
    w12_3 = _third_coeffs(q1, i1, q2, i2)
    w21_3 = _third_coeffs(q2, i2, q1, i1)
    w12_2 = _second_coeffs(q1, i1, q2, i2)
    w21_2 = _second_coeffs(q2, i2, q1, i1)
    out = {}
    for j in range(max(sigma2 - 1, -1), top + 1):
        L = 2 * j + rho
        I = 2 * j - sigma2 + rho
        K = k1 + k2 + top - j
        if L >= 0:
            inner = (_product_sum(w12_3, q1, i1, q2, i2, -3, j)
                     - _product_sum(w21_3, q2, i2, q1, i1, -3, j))
            if not inner:
                continue
            kap = kappa(L, 2 * I + 2) if I >= 0 else 0
            if I < 0 or kap == 0 or L > 2 * I + 1:
                return None
            out[GenIndex("B", L, I, K)] = -Fraction((I + 1) * kap, L + 1) * inner
        elif L == -1:
            # B^-1 has no z-component; read its coefficient off the y-component,
            # where it is the only contribution of the N^0 term
            inner = (_product_sum(w12_2, q1, i1, q2, i2, -2, 0)
                     - _product_sum(w21_2, q2, i2, q1, i1, -2, 0))
            if not inner:
                continue
            if I < 0:
                return None
            out[GenIndex("B", -1, I, K)] = inner
    return Expansion(out)


def structure_constants_closed(a, b, counter: FallbackCounter | None = None) -> Expansion:
    """[a, b] through closed-form structure constants.

    Falls back to :func:`bracket_in_basis` (and records it on ``counter``)
    when a guard of the closed form fails.
    """
    a, b = _require_b(a), _require_b(b)
    counter = FALLBACKS if counter is None else counter
    res = _closed_form(a, b)
    if res is None:
        counter.record(a, b, "guard")
        return bracket_in_basis(a, b)
    return res
