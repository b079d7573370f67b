import sympy
from flint import fmpq
from hypothesis import given, settings
from hypothesis import strategies as st

from qonsager.linalg import bareiss, inverse, left_kernel_vector, rank

ZERO, ONE = fmpq(0), fmpq(1)


@st.composite
def matrices(draw, square=False):
    m = draw(st.integers(1, 5))
    n = m if square else draw(st.integers(1, 5))
    # low-rank products show up often enough to exercise the singular paths
    if draw(st.booleans()):
        k = draw(st.integers(1, min(m, n)))
        a = [[draw(st.integers(-3, 3)) for _ in range(k)] for _ in range(m)]
        b = [[draw(st.integers(-3, 3)) for _ in range(n)] for _ in range(k)]
        rows = [[sum(a[i][t] * b[t][j] for t in range(k)) for j in range(n)] for i in range(m)]
    else:
        rows = [[draw(st.integers(-5, 5)) for _ in range(n)] for _ in range(m)]
    return rows


def _q(rows):
    return [[fmpq(x) for x in r] for r in rows]


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(rows):
    assert rank(_q(rows), ZERO, ONE) == sympy.Matrix(rows).rank()


@settings(max_examples=150, deadline=None)
@given(matrices(square=True), st.randoms(use_true_random=False))
def test_determinant_matches_sympy_for_any_column_order(rows, rnd):
    order = list(range(len(rows)))
    rnd.shuffle(order)
    elim = bareiss(_q(rows), ZERO, ONE)
    assert elim.determinant == sympy.Matrix(rows).det()
    assert bareiss(_q(rows), ZERO, ONE, order).rank == elim.rank


@settings(max_examples=100, deadline=None)
@given(matrices(square=True))
def test_inverse(rows):
    A = _q(rows)
    inv = inverse(A, ZERO, ONE)
    if sympy.Matrix(rows).det() == 0:
        assert inv is None
        return
    n = len(A)
    for i in range(n):
        for j in range(n):
            s = sum((A[i][t] * inv[t][j] for t in range(n)), ZERO)
            assert s == (ONE if i == j else ZERO)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_left_kernel_vector(rows):
    A = _q(rows)
    x = left_kernel_vector(A, ZERO, ONE)
    if sympy.Matrix(rows).rank() == len(rows):
        assert x is None
        return
    assert any(x)
    for j in range(len(A[0])):
        assert sum((x[i] * A[i][j] for i in range(len(A))), ZERO) == 0


def test_pivots_and_empty_matrix():
    elim = bareiss(_q([[0, 2], [3, 1]]), ZERO, ONE)
    assert elim.rank == 2 and elim.determinant == -6
    assert {c for _, c in elim.pivots} == {0, 1}
    assert bareiss([], ZERO, ONE).determinant == ONE
