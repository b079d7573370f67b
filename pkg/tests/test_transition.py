from fractions import Fraction

import pytest

from qonsager.bases import WGIndex
from qonsager.errors import DegreeBoundError
from qonsager.ncpoly import core_algebra
from qonsager.reference import AMBIGUOUS_CELLS, transition_partial_rows, transition_rows
from qonsager.rewrite import complete
from qonsager.scalars import SpecializationPoint, SpecializedField, as_fraction, specialize
from qonsager.tower import Tower
from qonsager.transition import block_ranks, check_invertible, transition_matrix, wg_expand


@pytest.fixture(scope="module")
def report4(rs, tower):
    return check_invertible(transition_matrix(4, rs, tower))


def test_expansion_of_small_monomials(tower, F):
    alg = core_algebra(F)
    assert wg_expand(WGIndex.parse("W0"), tower) == alg.gen("a")
    assert wg_expand(WGIndex.parse("W0 G1"), tower) == alg.gen("a") * tower.gen("G", 0)
    assert wg_expand(WGIndex.parse("1"), tower) == alg.one


def test_weight_zero_and_one(rs, tower, F):
    r0 = check_invertible(transition_matrix(0, rs, tower))
    assert r0.rank == 1 and r0.invertible
    r1 = transition_matrix(1, rs, tower)
    assert {r.render() for r in r1.rows} == {"1", "W0", "W1"}
    assert r1.row_dict("1") == {"": F.one}
    assert r1.row_dict("W0") == {"a": F.one}
    assert r1.row_dict("W1") == {"b": F.one}


def test_weight_four_is_invertible(report4):
    assert (len(report4.rows), len(report4.cols)) == (29, 29)
    assert report4.rank == 29 and report4.invertible and not report4.structural
    assert report4.certificate["determinant_at_point"] == "518798828125/9516786152832"


def test_determinant_certificate_matches_direct_specialization(report4):
    # the determinant of the specialized matrix, computed by sympy without any reordering
    import sympy

    pt = SpecializationPoint.default()
    M = sympy.Matrix([[sympy.Rational(str(specialize(x, pt))) if x else 0 for x in row] for row in report4.matrix])
    assert str(M.det()) == report4.certificate["determinant_at_point"]


def test_golden_rows(report4, F):
    for name, row in transition_rows(F).items():
        assert report4.row_dict(name) == row, name


def test_partial_golden_rows(report4, F):
    for name, row in transition_partial_rows(F).items():
        skip = {c for r, c in AMBIGUOUS_CELLS if r == name}
        got = report4.row_dict(name)
        assert skip <= set(got)
        assert {w: v for w, v in got.items() if w not in skip} == row


def test_unreadable_cell_value(report4, F):
    q, qi = F.q, F.qinv
    assert report4.entry("W0 W-1", "aaba") == (q * q - 1 + qi * qi) / F.rho


def test_block_triangular_and_top_blocks_delta_free(report4):
    for i, r in enumerate(report4.rows):
        for j, c in enumerate(report4.cols):
            x = report4.matrix[i][j]
            if c.length > r.weight:
                assert not x
            if c.length == r.weight and x:
                assert not any(s.startswith("d") for s in x.free_symbols())


def test_block_ranks(report4):
    assert block_ranks(report4) == {0: (1, 1), 1: (2, 2), 2: (4, 4), 3: (8, 8), 4: (14, 14)}


def test_larger_weights_specialized(spec_field):
    rs = complete(8, spec_field)
    rep = check_invertible(transition_matrix(6, rs, Tower(spec_field)))
    assert (len(rep.rows), rep.rank, rep.invertible) == (93, 93, True)


def test_weight_five_symbolic(rs, tower):
    rep = check_invertible(transition_matrix(5, rs, tower))
    assert rep.rank == 53 and rep.invertible


def test_specialized_matrix_agrees_with_symbolic(report4, spec_field):
    rep = transition_matrix(4, complete(6, spec_field), Tower(spec_field))
    for i in range(29):
        for j in range(29):
            assert rep.matrix[i][j] == spec_field(report4.matrix[i][j])


def test_degree_bound_enforced(tower, F):
    with pytest.raises(DegreeBoundError):
        transition_matrix(5, complete(4, F), tower)


def test_json_shape(report4):
    data = report4.to_json()
    assert data["rows"][0] == {"monomial": "1", "weight": 0}
    assert data["cols"][0] == {"parts": [0], "word": "1"}
    assert {"parts": [0, 1], "word": "A*"} in data["cols"]
    assert all(e["value"] != "0" for e in data["entries"])
    assert as_fraction(SpecializedField(SpecializationPoint.default()).q) == Fraction(5, 3)
