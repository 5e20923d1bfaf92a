"""Random inputs shared by the test modules."""

from fractions import Fraction

from trizero.bases import b_generators_of_grade, make_generator
from trizero.ratpoly import Poly
from trizero.vfield import VField


def rand_q(rng, lo=-5, hi=5, den=4):
    return Fraction(rng.randint(lo, hi), rng.randint(1, den))


def rand_poly(rng, max_deg, terms=6, min_deg=0):
    d = {}
    for _ in range(terms):
        deg = rng.randint(min_deg, max_deg)
        a = rng.randint(0, deg)
        b = rng.randint(0, deg - a)
        d[(a, b, deg - a - b)] = rand_q(rng)
    return Poly(d)


def rand_field(rng, max_deg, terms=4, min_deg=0):
    return VField(*(rand_poly(rng, max_deg, terms, min_deg) for _ in range(3)))


def rand_b_member(rng, max_deg, terms=5, min_deg=1):
    gens = [g for gr in range(max(min_deg - 1, 0), max_deg) for g in b_generators_of_grade(gr)]
    out = VField.zero()
    for idx in rng.sample(gens, min(terms, len(gens))):
        out = out + make_generator(idx) * rand_q(rng)
    return out
