"""Hypothesis strategies and a sympy mirror used as an independent oracle."""

from __future__ import annotations

import sympy
from hypothesis import assume
from hypothesis import strategies as st

from qonsager.scalars import symbolic_field

NAMES = ("q", "r", "d1", "d2", "d3", "d4", "d5", "d6")
SYMBOLS = dict(zip(NAMES, sympy.symbols(NAMES)))

leaves = st.one_of(st.integers(-4, 4), st.sampled_from(["q", "qinv", "r", "d1", "d2"]))
trees = st.recursive(leaves, lambda kids: st.tuples(st.sampled_from("+-*/"), kids, kids), max_leaves=6)


def to_sympy(x) -> sympy.Expr:
    return sympy.sympify(x.to_str().replace("^", "**"), locals=SYMBOLS)


def build(tree, F):
    """Evaluate an expression tree in the scalar field; ``None`` on division by zero."""
    if isinstance(tree, int):
        return F(tree)
    if isinstance(tree, str):
        return {"q": F.q, "qinv": F.qinv, "r": F.rho, "d1": F.delta(1), "d2": F.delta(2)}[tree]
    op, left, right = tree
    x, y = build(left, F), build(right, F)
    if x is None or y is None:
        return None
    if op == "/":
        return None if not y else x / y
    return {"+": x + y, "-": x - y, "*": x * y}[op]


def build_sympy(tree) -> sympy.Expr:
    s = SYMBOLS
    if isinstance(tree, int):
        return sympy.Integer(tree)
    if isinstance(tree, str):
        return {"q": s["q"], "qinv": 1 / s["q"], "r": s["r"], "d1": s["d1"], "d2": s["d2"]}[tree]
    op, left, right = tree
    x, y = build_sympy(left), build_sympy(right)
    return {"+": x + y, "-": x - y, "*": x * y, "/": x / y}[op]


@st.composite
def scalars(draw, nonzero: bool = False):
    F = symbolic_field()
    x = build(draw(trees), F)
    assume(x is not None)
    if nonzero:
        assume(bool(x))
    return x


def _coeff_pool():
    F = symbolic_field()
    q, qi, r, d1 = F.q, F.qinv, F.rho, F.delta(1)
    return [F(1), F(-1), F(2), F(-3), q, qi, q - qi, r, d1, (q + qi) / r, d1 * q * q - 1, F(1) / (q * q + 1)]


@st.composite
def core_polys(draw, max_len: int = 4, max_terms: int = 4):
    from qonsager.ncpoly import core_algebra

    alg = core_algebra(symbolic_field())
    pool = _coeff_pool()
    n = draw(st.integers(0, max_terms))
    out = alg.zero
    for _ in range(n):
        word = draw(st.text(alphabet="ab", max_size=max_len))
        out = out + alg.monomial(word) * draw(st.sampled_from(pool))
    return out
