import itertools

import pytest

from trizero.bases import B, GenIndex, b_generators_of_grade, make_generator, reconstruct
from trizero.errors import PreconditionError
from trizero.liealg import (
    FallbackCounter,
    bracket_in_basis,
    grade,
    special_bracket,
    structure_constants_closed,
)
from trizero.vfield import lie_bracket

LOW = [g for gr in range(4) for g in b_generators_of_grade(gr)]


def test_bracket_matches_field_bracket():
    for a, b in itertools.islice(itertools.product(LOW, LOW), 0, None, 7):
        assert reconstruct(bracket_in_basis(a, b)) == lie_bracket(make_generator(a), make_generator(b))


def test_antisymmetry_and_grading():
    for a, b in itertools.islice(itertools.product(LOW, LOW), 0, None, 5):
        ab = bracket_in_basis(a, b)
        assert ab == bracket_in_basis(b, a).scale(-1)
        assert all(grade(c) == grade(a) + grade(b) for c in ab)
        assert all(c.weight == a.weight + b.weight for c in ab)


def test_jacobi_in_basis_coordinates():
    trio = [B(1, 1), B(-1, 1), B(2, 2), B(0, 0, 1), B(3, 1)]
    for a, b, c in itertools.combinations(trio, 3):
        total = {}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for idx, cf in bracket_in_basis(y, z).items():
                for idx2, cf2 in bracket_in_basis(x, idx).items():
                    total[idx2] = total.get(idx2, 0) + cf * cf2
        assert all(v == 0 for v in total.values())


def test_special_brackets_agree_with_reference():
    for a in (B(0, 0), B(1, 0), B(-1, 0)):
        for b in LOW:
            assert special_bracket(a, b) == bracket_in_basis(a, b)
    assert special_bracket(B(-1, 2), B(3, 2)) == bracket_in_basis(B(-1, 2), B(3, 2))
    with pytest.raises(PreconditionError):
        special_bracket(B(2, 1), B(0, 0))


def test_closed_form_on_high_grade_pairs():
    counter = FallbackCounter()
    pairs = [(B(6, 8, 3), B(2, 5, 2)), (B(3, 5, 0), B(4, 4, 0)), (B(-1, 3, 1), B(5, 4, 0)),
             (B(0, 2, 2), B(-1, 0, 3))]
    for a, b in pairs:
        assert structure_constants_closed(a, b, counter) == bracket_in_basis(a, b)
    assert counter.count == 0


def test_non_b_index_rejected():
    with pytest.raises(PreconditionError):
        bracket_in_basis(GenIndex("A", 0, 0, 0), B(0, 0))
