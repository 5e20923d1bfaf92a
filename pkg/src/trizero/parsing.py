"""Recursive-descent parser for polynomial expressions and vector fields.

Grammar (whitespace-insensitive)::

    field   := assign (sep assign)*          with sep = ';' or ','
    assign  := ('dx' | 'dy' | 'dz') '=' expr
    expr    := ['+' | '-'] term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := atom ['^' INT]
    atom    := INT ['/' INT] | 'x' | 'y' | 'z' | 'Delta' | '(' expr ')'

A field may also be written as a triple ``(p1, p2, p3)`` or as a JSON
object ``{"dx": "...", "dy": "...", "dz": "..."}``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .errors import ParseError
from .ratpoly import DELTA, Poly, X, Y, Z
from .vfield import VField

_TOKEN = re.compile(r"\s*(?:(\d+)|(Delta|dx|dy|dz|[xyz])|(\S))")
_ATOMS = {"x": X, "y": Y, "z": Z, "Delta": DELTA}


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        start = m.start(m.lastindex)
        num, name, sym = m.groups()
        if num is not None:
            toks.append(("int", num, start))
        elif name is not None:
            toks.append(("name", name, start))
        elif sym in "+-*/^()=;,":
            toks.append(("sym", sym, start))
        else:
            raise ParseError(f"unexpected character {sym!r}", start, text)
        pos = m.end()
    toks.append(("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.toks[self.i]

    def error(self, msg, pos=None):
        raise ParseError(msg, self.tok[2] if pos is None else pos, self.text)

    def accept(self, value) -> bool:
        if self.tok[0] in ("sym", "name") and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value):
        if not self.accept(value):
            found = self.tok[1] or "end of input"
            self.error(f"expected {value!r}, found {found!r}")

    def expect_end(self):
        if self.tok[0] != "end":
            self.error(f"unexpected {self.tok[1]!r}")

    def integer(self) -> int:
        kind, val, _ = self.tok
        if kind != "int":
            self.error("expected an integer")
        self.i += 1
        return int(val)

    def expr(self) -> Poly:
        neg = False
        if self.accept("-"):
            neg = True
        else:
            self.accept("+")
        out = self.term()
        if neg:
            out = -out
        while True:
            if self.accept("+"):
                out = out + self.term()
            elif self.accept("-"):
                out = out - self.term()
            else:
                return out

    def term(self) -> Poly:
        out = self.factor()
        while self.accept("*"):
            out = out * self.factor()
        return out

    def factor(self) -> Poly:
        base = self.atom()
        if self.accept("^"):
            if self.tok[1] == "-":
                self.error("negative exponents are not allowed")
            base = base ** self.integer()
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.tok
        if kind == "int":
            num = self.integer()
            if self.accept("/"):
                den = self.integer()
                if den == 0:
                    self.error("zero denominator", pos)
                return Poly.const(Fraction(num, den))
            return Poly.const(num)
        if kind == "name" and val in _ATOMS:
            self.i += 1
            return _ATOMS[val]
        if self.accept("("):
            out = self.expr()
            self.expect(")")
            return out
        self.error(f"expected a number, variable or '(' but found {val or 'end of input'!r}")

    def field_assignments(self) -> VField:
        comps = {}
        while True:
            kind, name, pos = self.tok
            if kind != "name" or name not in ("dx", "dy", "dz"):
                self.error("expected dx, dy or dz")
            if name in comps:
                self.error(f"{name} given twice")
            self.i += 1
            self.expect("=")
            comps[name] = self.expr()
            if not (self.accept(";") or self.accept(",")):
                break
            if self.tok[0] == "end":
                break
        self.expect_end()
        return VField(*(comps.get(n, Poly()) for n in ("dx", "dy", "dz")))

    def field_triple(self) -> VField:
        self.expect("(")
        comps = [self.expr()]
        for _ in range(2):
            self.expect(",")
            comps.append(self.expr())
        self.expect(")")
        self.expect_end()
        return VField(*comps)


def parse_poly(text: str) -> Poly:
    p = _Parser(text)
    out = p.expr()
    p.expect_end()
    return out


def parse_field(text: str) -> VField:
    """Parse a field given as assignments, a triple, or a JSON object."""
    stripped = text.strip()
    if stripped.startswith("{"):
        try:
            doc = json.loads(stripped)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos, text) from None
        if not isinstance(doc, dict) or set(doc) - {"dx", "dy", "dz"}:
            raise ParseError("JSON field needs only the keys dx, dy, dz", 0, text)
        return VField(*(parse_poly(str(doc.get(n, "0"))) for n in ("dx", "dy", "dz")))
    p = _Parser(text)
    if p.tok[1] == "(" and not _looks_like_assignment(p):
        return p.field_triple()
    return p.field_assignments()


def _looks_like_assignment(p: _Parser) -> bool:
    return any(t[1] == "=" for t in p.toks)
