import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from trizero.bases import B, make_generator
from trizero.errors import ParseError
from trizero.parsing import parse_field, parse_poly
from trizero.ratpoly import DELTA, Poly, X, Y, Z
from trizero.sl2core import N
from trizero.vfield import VField, format_field

coef = st.fractions(min_value=-30, max_value=30, max_denominator=12)
mono = st.tuples(*(st.integers(0, 5),) * 3)
polys = st.dictionaries(mono, coef, max_size=5).map(Poly)
fields = st.tuples(polys, polys, polys).map(lambda t: VField(*t))


def test_examples():
    assert parse_field("dx=0; dy=-x; dz=-2*y") == -N
    assert parse_field("dx = 2*y*z; dy = z^2; dz = 0") == make_generator(B(-1, 1))
    assert parse_field("dx = Delta; dy=0; dz=0") == VField(DELTA, Poly(), Poly())


def test_expression_forms():
    assert parse_poly("  -3/4 * x^2*y + (x - y)^2 ") == X**2 * Y * Fraction(-3, 4) + (X - Y) ** 2
    assert parse_poly("+x") == X
    assert parse_poly("2*3*z") == Z * 6
    assert parse_field("dz = y, dx = 1") == VField(1, 0, Y)
    assert parse_field("(x, y, z)") == VField(X, Y, Z)
    assert parse_field(json.dumps({"dx": "x*z", "dy": "0", "dz": "1/2"})) == VField(X * Z, 0, Fraction(1, 2))


@pytest.mark.parametrize("text, pos", [
    ("dx = x^-1", 7),
    ("dx = x +", 8),
    ("dx = 1/0", 5),
    ("dx = x # y", 7),
    ("dx = x; dx = y", 8),
    ("dq = 1", 0),
    ("(x, y)", 5),
])
def test_errors_report_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        parse_field(text)
    assert exc.value.pos == pos
    assert f"position {pos}" in str(exc.value)


def test_bad_json():
    with pytest.raises(ParseError):
        parse_field('{"dx": "x", ')
    with pytest.raises(ParseError):
        parse_field('{"dw": "x"}')


@settings(max_examples=80, deadline=None)
@given(fields)
def test_format_parse_round_trip(v):
    assert parse_field(format_field(v)) == v
    assert parse_field(format_field(v, named=True)) == v
