"""Sparse polynomials in x, y, z with exact rational coefficients.

A :class:`Poly` is a mapping from exponent triples to nonzero rationals.
Coefficients are stored as ``int`` when integral and as
:class:`fractions.Fraction` otherwise; both are canonical, and mixing them in
arithmetic keeps results exact. Values are treated as immutable.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Iterator, Mapping, NamedTuple, Union

Rational = Fraction
Scalar = Union[int, Fraction]

VARS = ("x", "y", "z")
_VAR_INDEX = {"x": 0, "y": 1, "z": 2}


class Monomial(NamedTuple):
    ex: int
    ey: int
    ez: int

    @property
    def degree(self) -> int:
        return self.ex + self.ey + self.ez


def as_rational(c) -> Scalar:
    """Coerce ``c`` to the canonical coefficient representation."""
    if isinstance(c, bool):
        c = int(c)
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return as_rational(Fraction(c))
    # numbers.Rational subclasses (e.g. gmpy2.mpq) but never floats
    if hasattr(c, "numerator") and hasattr(c, "denominator") and not isinstance(c, float):
        return as_rational(Fraction(int(c.numerator), int(c.denominator)))
    raise TypeError(f"not an exact rational: {c!r}")


def _clean(d: dict) -> dict:
    out = {}
    for k, c in d.items():
        if c:
            if type(c) is Fraction and c.denominator == 1:
                c = c.numerator
            out[k] = c
    return out


def _var_index(var) -> int:
    if isinstance(var, int):
        if var not in (0, 1, 2):
            raise ValueError(f"variable index out of range: {var}")
        return var
    try:
        return _VAR_INDEX[var]
    except KeyError:
        raise ValueError(f"unknown variable {var!r}; expected one of x, y, z") from None


class Poly:
    """Polynomial in x, y, z over the rationals."""

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Mapping[tuple, Scalar] | None = None):
        if terms is None:
            self._t = {}
        else:
            d = {}
            for k, c in terms.items():
                k = tuple(k)
                if len(k) != 3 or any((not isinstance(e, int)) or e < 0 for e in k):
                    raise ValueError(f"bad exponent triple {k!r}")
                c = as_rational(c)
                if c:
                    d[k] = d.get(k, 0) + c
            self._t = _clean(d)
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "Poly":
        # trusted constructor: keys are triples, values nonzero canonical
        p = object.__new__(cls)
        p._t = d
        p._hash = None
        return p

    # constructors -------------------------------------------------------

    @classmethod
    def const(cls, c) -> "Poly":
        c = as_rational(c)
        return cls._raw({(0, 0, 0): c} if c else {})

    @classmethod
    def var(cls, name) -> "Poly":
        i = _var_index(name)
        e = [0, 0, 0]
        e[i] = 1
        return cls._raw({tuple(e): 1})

    @classmethod
    def monomial(cls, ex: int, ey: int, ez: int, coeff=1) -> "Poly":
        return cls({(ex, ey, ez): coeff})

    @classmethod
    def coerce(cls, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return cls.const(other)

    # mapping-like access --------------------------------------------------

    def terms(self) -> Iterator[tuple[Monomial, Scalar]]:
        """Terms in display order (graded lex, x > y > z)."""
        for k in sorted(self._t, key=_display_key):
            yield Monomial(*k), self._t[k]

    def items(self):
        return self._t.items()

    def coeff(self, ex: int, ey: int, ez: int) -> Scalar:
        return self._t.get((ex, ey, ez), 0)

    def support(self) -> frozenset:
        return frozenset(self._t)

    def __len__(self) -> int:
        return len(self._t)

    def __bool__(self) -> bool:
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(k) for k in self._t), default=-1)

    @property
    def min_degree(self) -> int:
        return min((sum(k) for k in self._t), default=-1)

    def degrees(self) -> set[int]:
        return {sum(k) for k in self._t}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_part(self, d: int) -> "Poly":
        return Poly._raw({k: c for k, c in self._t.items() if sum(k) == d})

    def truncate(self, max_degree: int) -> "Poly":
        return Poly._raw({k: c for k, c in self._t.items() if sum(k) <= max_degree})

    def constant_term(self) -> Scalar:
        return self._t.get((0, 0, 0), 0)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        if len(self._t) < len(other._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        d = dict(a)
        for k, c in b.items():
            s = d.get(k, 0) + c
            if s:
                d[k] = s
            else:
                d.pop(k, None)
        return Poly._raw(_clean(d) if b else d)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly._raw({k: -c for k, c in self._t.items()})

    def __pos__(self) -> "Poly":
        return self

    def __sub__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            try:
                other = Poly.const(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def scale(self, c) -> "Poly":
        c = as_rational(c)
        if not c:
            return Poly()
        if c == 1:
            return self
        return Poly._raw(_clean({k: v * c for k, v in self._t.items()}))

    def __mul__(self, other) -> "Poly":
        if not isinstance(other, Poly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return Poly()
        if len(a) < len(b):
            a, b = b, a
        d: dict = {}
        get = d.get
        for (b0, b1, b2), cb in b.items():
            for (a0, a1, a2), ca in a.items():
                k = (a0 + b0, a1 + b1, a2 + b2)
                d[k] = get(k, 0) + ca * cb
        return Poly._raw(_clean(d))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Poly":
        if isinstance(other, Poly):
            return NotImplemented
        c = as_rational(other)
        if not c:
            raise ZeroDivisionError("division of a polynomial by zero")
        return self.scale(Fraction(1) / c)

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial power needs a non-negative integer exponent")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # comparison -----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self._t == other._t
        try:
            return self._t == Poly.const(other)._t
        except TypeError:
            return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # calculus / evaluation ------------------------------------------------

    def diff(self, var) -> "Poly":
        i = _var_index(var)
        d = {}
        for k, c in self._t.items():
            e = k[i]
            if e:
                kk = list(k)
                kk[i] = e - 1
                d[tuple(kk)] = c * e
        return Poly._raw(d)

    def eval_at(self, point) -> Scalar:
        px, py, pz = (as_rational(v) for v in point)
        total = 0
        for (a, b, c), coef in self._t.items():
            total += coef * px**a * py**b * pz**c
        return as_rational(total)

    def compose(self, px, py, pz) -> "Poly":
        """Substitute polynomials for x, y, z."""
        subs = [Poly.coerce(px), Poly.coerce(py), Poly.coerce(pz)]
        cache: list[dict[int, Poly]] = [{0: Poly.const(1)} for _ in range(3)]

        def power(i, e):
            c = cache[i]
            if e not in c:
                c[e] = power(i, e - 1) * subs[i]
            return c[e]

        out = Poly()
        for (a, b, c), coef in self._t.items():
            out = out + power(0, a) * power(1, b) * power(2, c) * coef
        return out

    # display --------------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)!r})"


def _display_key(k):
    return (-(k[0] + k[1] + k[2]), -k[0], -k[1], -k[2])


def _format_coeff(c) -> str:
    c = as_rational(c)
    if isinstance(c, int):
        return str(c)
    return f"{c.numerator}/{c.denominator}"


def format_monomial(k, names=VARS) -> str:
    parts = []
    for name, e in zip(names, k):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def format_poly(p: Poly, names=VARS) -> str:
    """Canonical text, e.g. ``x^2*z^2 - 2*x*y^2*z + y^4``.

    ``names`` relabels the three variables for display only.
    """
    if not p:
        return "0"
    out = []
    for i, (k, c) in enumerate(p.terms()):
        neg = c < 0
        a = -c if neg else c
        mono = format_monomial(k, names)
        if not mono:
            body = _format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_format_coeff(a)}*{mono}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# module-level operation names -----------------------------------------------

def arith(a: Poly, b: Poly, op: str) -> Poly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def scale(a: Poly, c) -> Poly:
    return a.scale(c)


def pow(a: Poly, n: int) -> Poly:  # noqa: A001 - mirrors the operation name
    return a**n


def differentiate(p: Poly, var) -> Poly:
    return p.diff(var)


def eval_at(p: Poly, point) -> Scalar:
    return p.eval_at(point)


def poly_sum(polys: Iterable[Poly]) -> Poly:
    d: dict = {}
    for p in polys:
        for k, c in p._t.items():
            d[k] = d.get(k, 0) + c
    return Poly._raw(_clean(d))


X = Poly.var("x")
Y = Poly.var("y")
Z = Poly.var("z")
ONE = Poly.const(1)
DELTA = X * Z - Y * Y
