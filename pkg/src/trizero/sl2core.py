"""The sl(2) triple {M, N, H}, iterated N-actions and their expansion coefficients.

N = x d/dy + 2y d/dz acts on scalars as a derivation and on vector fields
through ad_N. Powers of N applied to z^i have closed forms in x, y, z and
Delta = xz - y^2; the coefficients live here, together with the re-expansion
of products N^q1(z^i) N^q2(z^j) over the same kind of terms.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import PreconditionError
from .linsolve import solve_columns
from .ratpoly import DELTA, Poly, X, Y, Z, as_rational
from .vfield import VField, apply_to, lie_bracket

N = VField(Poly(), X, Y * 2)
M = VField(Y * 2, Z, Poly())
H = VField(X * -2, Poly(), Z * 2)
E = VField(X, Y, Z)


def kappa(l: int, i: int) -> int:
    """Falling factorial i (i-1) ... (i-l+1); kappa(0, i) = 1.

    Zero whenever the product runs through 0, which is how callers detect an
    excluded term. Negative ``l`` has no product form and is rejected.
    """
    if l < 0:
        raise ValueError(f"kappa needs l >= 0, got l={l}")
    out = 1
    for j in range(l):
        out *= i - j
    return out


def pochhammer(a, b, k: int):
    """prod_{j<k} (a + j b)."""
    if k < 0:
        raise ValueError("pochhammer needs k >= 0")
    out = 1
    for j in range(k):
        out *= a + j * b
    return as_rational(out)


def n_apply(f: Poly) -> Poly:
    """N acting on a scalar: x f_y + 2y f_z."""
    out = Poly()
    fy = f.diff(1)
    if fy:
        out = out + X * fy
    fz = f.diff(2)
    if fz:
        out = out + Y * fz * 2
    return out


def n_pow(f: Poly, q: int) -> Poly:
    if q < 0:
        raise ValueError("negative power of N")
    for _ in range(q):
        if not f:
            break
        f = n_apply(f)
    return f


@lru_cache(maxsize=None)
def n_pow_z(q: int, i: int) -> Poly:
    """N^q (z^i) by repeated derivation."""
    if q < 0 or i < 0:
        raise ValueError("n_pow_z needs q, i >= 0")
    if q == 0:
        return Z**i
    return n_apply(n_pow_z(q - 1, i))


def ad_n(v: VField) -> VField:
    return lie_bracket(N, v)


def ad_n_pow(v: VField, n: int) -> VField:
    for _ in range(n):
        if not v:
            break
        v = ad_n(v)
    return v


def _split(q: int) -> tuple[int, int]:
    return q // 2, q % 2


def eta_coeff(q: int, i: int, n: int) -> Fraction:
    """Coefficient of x^(s-n) y^r z^(i-s-r-n) Delta^n in N^q(z^i), q = 2s + r."""
    s, r = _split(q)
    if not 0 <= n <= s:
        raise PreconditionError(f"eta index n={n} outside 0..{s}", witness=n)
    if i < s + n + r:
        return 0
    num = (
        (-1) ** n
        * pochhammer(s, -1, n)
        * pochhammer(i, -1, s + n + r)
        * pochhammer(2 * i - 1, -2, s)
        * Fraction(2) ** (s + n + r)
    )
    den = factorial(n) * pochhammer(2 * i - 1, -2, n)
    if den == 0:
        # (2i-1)(2i-3)... never vanishes for integer i, kept as a guard
        return 0
    return as_rational(Fraction(num) / den)


def zeta_coeff(q: int, i: int, n: int) -> Fraction:
    """Coefficient of x^(s-n) y^(2n+r) z^(i-n-s-r) in N^q(z^i), q = 2s + r."""
    s, r = _split(q)
    if not 0 <= n <= s:
        raise PreconditionError(f"zeta index n={n} outside 0..{s}", witness=n)
    if i < s + n + r:
        return 0
    num = factorial(i) * factorial(q) * 2 ** (2 * n + r)
    den = factorial(s - n) * factorial(2 * n + r) * factorial(i - n - s - r)
    return as_rational(Fraction(num, den))


def n_pow_z_eta(q: int, i: int) -> Poly:
    """N^q(z^i) rebuilt from the eta coefficients."""
    s, r = _split(q)
    out = Poly()
    for n in range(s + 1):
        c = eta_coeff(q, i, n)
        if c:
            out = out + Poly.monomial(s - n, r, i - s - r - n, c) * DELTA**n
    return out


def n_pow_z_zeta(q: int, i: int) -> Poly:
    """N^q(z^i) rebuilt from the zeta coefficients."""
    s, r = _split(q)
    terms = {}
    for n in range(s + 1):
        c = zeta_coeff(q, i, n)
        if c:
            terms[(s - n, 2 * n + r, i - n - s - r)] = c
    return Poly(terms)


def reexpand_layout(q1: int, q2: int, i: int, j: int):
    """Index data of the product re-expansion.

    Returns (p_range, rho, sigma2, delta_exponent) where term p of the
    expansion is N^(2p+rho)(z^(2p-sigma2+rho)) * Delta^(delta_exponent - p).
    """
    s1, r1 = _split(q1)
    s2, r2 = _split(q2)
    rho = abs(r2 - r1)
    f = (r1 + r2) // 2
    sigma2 = q1 + q2 - i - j
    top = s1 + s2 + f
    return range(max(sigma2, 0), top + 1), rho, sigma2, top


def reexpand_basis(q1: int, q2: int, i: int, j: int) -> dict[int, Poly]:
    prange, rho, sigma2, top = reexpand_layout(q1, q2, i, j)
    return {
        p: n_pow_z(2 * p + rho, 2 * p - sigma2 + rho) * DELTA ** (top - p)
        for p in prange
    }


@lru_cache(maxsize=None)
def _reexpand_cached(q1: int, q2: int, i: int, j: int) -> tuple:
    lhs = n_pow_z(q1, i) * n_pow_z(q2, j)
    if not lhs:
        return ()
    basis = reexpand_basis(q1, q2, i, j)
    ps = list(basis)
    sol = solve_columns([dict(basis[p].items()) for p in ps], dict(lhs.items()))
    return tuple((p, c) for p, c in zip(ps, sol) if c)


def reexpand_product(q1: int, q2: int, i: int, j: int) -> dict[int, Fraction]:
    """Coefficients C_p with N^q1(z^i) N^q2(z^j) = sum_p C_p * basis_p.

    See :func:`reexpand_layout` for the basis. Solved exactly; empty when the
    product vanishes.
    """
    if min(q1, q2, i, j) < 0:
        raise ValueError("reexpand_product needs non-negative arguments")
    return dict(_reexpand_cached(q1, q2, i, j))


def reexpand_sum(q1: int, q2: int, i: int, j: int, coeffs=None) -> Poly:
    """Right-hand side of the re-expansion evaluated as a polynomial."""
    if coeffs is None:
        coeffs = reexpand_product(q1, q2, i, j)
    basis = reexpand_basis(q1, q2, i, j)
    out = Poly()
    for p, c in coeffs.items():
        out = out + basis[p] * c
    return out


def nm_expand(n: int, f: Poly) -> VField:
    """ad_N^n (f M) = N^n(f) M - n N^(n-1)(f) H - n(n-1) N^(n-2)(f) N."""
    if not f.is_homogeneous():
        raise PreconditionError("nm_expand needs a homogeneous polynomial", witness=f)
    out = M * n_pow(f, n)
    if n >= 1:
        out = out - H * (n_pow(f, n - 1) * n)
    if n >= 2:
        out = out - N * (n_pow(f, n - 2) * (n * (n - 1)))
    return out


def h_weight(f: Poly) -> int | None:
    """Eigenvalue of H on ``f`` if ``f`` is an H-eigenfunction, else None."""
    if not f:
        return None
    ws = {2 * c - 2 * a for (a, b, c) in f.support()}
    return ws.pop() if len(ws) == 1 else None


def nfm_three_component(n: int, f: Poly) -> VField:
    """Component-wise closed form of ad_N^n(f M) for f in ker M (f an H-eigenfunction)."""
    w = h_weight(f)
    if w is None or apply_to(M, f):
        raise PreconditionError("need a homogeneous H-eigenfunction in ker M", witness=f)
    zf = Z * f
    kn = kappa(n, w + 2)
    out = [Poly(), Poly(), Poly()]
    kn1 = kappa(n + 1, w + 2)
    if kn1:
        out[0] = n_pow(zf, n + 1) * Fraction(2 * (w - n + 2) * kn, (w + 2) * kn1)
    if kn:
        out[1] = n_pow(zf, n) * Fraction(w - 2 * n + 2, w + 2)
    if n >= 1:
        km1 = kappa(n - 1, w + 2)
        if km1:
            out[2] = n_pow(zf, n - 1) * Fraction(-2 * n * kn, (w + 2) * km1)
    return VField(*out)


def eta_tilde(q1: int, q2: int, n: int, i: int, j: int) -> Fraction:
    """Cauchy product of eta coefficients: weight of Delta^n in N^q1(z^i) N^q2(z^j)."""
    s1, s2 = q1 // 2, q2 // 2
    out = Fraction(0)
    for r in range(n + 1):
        if r <= s1 and n - r <= s2:
            out += eta_coeff(q1, i, r) * eta_coeff(q2, j, n - r)
    return out


def reexpand_closed_form(q1: int, q2: int, i: int, j: int) -> dict[int, Fraction] | None:
    """Re-expansion coefficients C_p from the eta-sum closed form.

    Term r of C_p is
    (eta~_r - f eta~_(r-1)) (p+1)_1^m (p - sigma2 + 1 - (r1+r2))_1^m
    / (eta_0[2p+rho, 2p-sigma2] (s1+s2-p-r)! 2^(p+r-top) (4p - 2 sigma2 + 3 - 4f)_2^m)
    with m = top - p - r, f = (r1+r2)//2 and (a)_b^m = a (a+b) ... (a+(m-1)b).
    Returns None when a normalizer vanishes or a factorial argument is negative
    under a nonzero numerator.
    """
    s1, r1 = _split(q1)
    s2, r2 = _split(q2)
    prange, rho, sigma2, top = reexpand_layout(q1, q2, i, j)
    f = (r1 + r2) // 2
    out = {}
    for p in prange:
        e0 = eta_coeff(2 * p + rho, 2 * p - sigma2, 0) if 2 * p - sigma2 >= 0 else 0
        if not e0:
            return None
        total = Fraction(0)
        for r in range(top - p + 1):
            m = top - p - r
            lead = eta_tilde(q1, q2, r, i, j)
            if f and r:
                lead -= f * eta_tilde(q1, q2, r - 1, i, j)
            num = lead * pochhammer(p + 1, 1, m) * pochhammer(p - sigma2 + 1 - (r1 + r2), 1, m)
            if not num:
                continue
            fa = s1 + s2 - p - r
            den = pochhammer(4 * p - 2 * sigma2 + 3 - 4 * f, 2, m)
            if fa < 0 or not den:
                return None
            total += Fraction(num) / (e0 * factorial(fa) * Fraction(2) ** (p + r - top) * den)
        if total:
            out[p] = total
    return out
