"""Published closed forms used as golden data by the verification suites.

Everything here is transcribed by hand; nothing is computed from the tower.
Polynomials over the core alphabet use ``a = W_0`` and ``b = W_1``.
"""

from __future__ import annotations

import re

from .ncpoly import FreeAlgebra, NCPoly, core_algebra, omega_swap
from .scalars import qnum, symbolic_field
from .series import mode_algebra, mode_letter


def _core(field):
    alg = core_algebra(field or symbolic_field())
    F = alg.field
    return alg, F, F.q, F.qinv, F.rho


def _words(alg: FreeAlgebra, pairs) -> NCPoly:
    out = alg.zero
    for word, c in pairs:
        out = out + alg.monomial(word) * c
    return out


# ---------------------------------------------------------------------------
# low generators
# ---------------------------------------------------------------------------


def g1_display(field=None) -> NCPoly:
    alg, F, q, qi, r = _core(field)
    return _words(alg, [("ba", q), ("ab", -qi), ("", F.delta(1))])


def wm1_display(field=None) -> NCPoly:
    alg, F, q, qi, r = _core(field)
    d1 = F.delta(1)
    return _words(
        alg,
        [("aba", (q * q + qi * qi) / r), ("aab", -1 / r), ("baa", -1 / r), ("b", F.one), ("a", d1 * (q - qi) / r)],
    )


def g2_display(field=None) -> NCPoly:
    alg, F, q, qi, r = _core(field)
    d1, d2 = F.delta(1), F.delta(2)
    pre = 1 / (r * (q * q + qi * qi))
    top = _words(
        alg,
        [
            ("aabb", qi**3 + qi),
            ("bbaa", -(q**3) - q),
            ("abba", qi**3 - q**3),
            ("baab", qi**3 - q**3),
            ("abab", -(qi**5) - qi**3 - 2 * qi),
            ("baba", q**5 + q**3 + 2 * q),
            ("aa", r * (q - qi)),
            ("bb", r * (q - qi)),
        ],
    )
    return top * pre + g1_display(field).graded_component(2) * (d1 * (q - qi) / r) + alg.scalar(
        d2 - d1 * d1 * (q - qi) / (r * (q * q + qi * qi))
    )


# ---------------------------------------------------------------------------
# third-level generators (given in a partially reduced form)
# ---------------------------------------------------------------------------


def wm2_display(field=None, corrected: bool = False) -> NCPoly:
    """W_{-2} as printed; ``corrected=True`` swaps in the three amended coefficients."""
    alg, F, q, qi, r = _core(field)
    n = lambda k: qnum(k, F)
    d1, d2 = F.delta(1), F.delta(2)
    r2 = r * r
    mid = n(2) * n(3) * n(8) / n(4) ** 2 + 1
    w = {
        1: 1 / r2,
        2: -n(2) * n(8) / (r2 * n(4) ** 2),
        3: -n(4) / (r2 * n(2)),
        4: mid / r2,
        5: 1 / (r2 * n(3)),
        6: -n(2) * n(8) / (r2 * n(3) * n(4)),
        7: n(2) ** 2 / (r2 * n(3) * n(4)),
        8: -1 / r,
        9: -1 / (r * n(3)),
        10: -(q - qi) * d1 / r2,
        11: mid / (r2 * n(3)),
        12: (q - qi) * n(4) * d1 / (r2 * n(2)),
        13: (q - qi) ** 2 * n(2) / (r * n(4)),
        14: 1 - (q - qi) ** 2 * n(2) * d1 * d1 / (r2 * n(4)) + (q - qi) * d2 / r,
        15: (q - qi) * d1 / r,
    }
    if corrected:
        w.update(wm2_amendments(F))
    return _words(
        alg,
        [
            ("aaabb", w[1]),
            ("aabba", w[2]),
            ("baaba", w[3]),
            ("aabab", w[3]),
            ("ababa", w[4]),
            ("bbaaa", w[5]),
            ("abbaa", w[6]),
            ("baaab", w[7]),
            ("abb", w[8]),
            ("bba", w[9]),
            ("aab", w[10]),
            ("baa", w[10]),
            ("bab", w[11]),
            ("aba", w[12]),
            ("aaa", w[13]),
            ("a", w[14]),
            ("b", w[15]),
        ],
    )


def wm2_amendments(F) -> dict[int, object]:
    """Replacement values for w_6, w_7, w_11 that make the W_{-2} display consistent."""
    n = lambda k: qnum(k, F)
    r2 = F.rho * F.rho
    mid = n(2) * n(3) * n(8) / n(4) ** 2 + 1
    return {
        6: -n(2) * n(8) / (r2 * n(4) ** 2),
        7: n(2) ** 3 / (r2 * n(3) * n(4)),
        11: mid / (F.rho * n(3)),
    }


def g3_display(field=None, corrected: bool = False) -> NCPoly:
    """G_3 as printed; ``corrected=True`` puts 1/rho^2 on the cubic delta_1 term of the constant."""
    alg, F, q, qi, r = _core(field)
    n = lambda k: qnum(k, F)
    d1, d2, d3 = F.delta(1), F.delta(2), F.delta(3)
    r2 = r * r
    n2, n3, n4, n6, n8 = n(2), n(3), n(4), n(6), n(8)
    g = {}
    g[1] = -(qi**3) * n2 / (r2 * n6)
    g[2] = 2 * (qi**7 + qi**3 + qi) * n2**2 * n3 / (r2 * n4 * n6)
    g[3] = qi * n4 * (q * q - qi * qi - 1) / (r2 * n6)
    g[4] = (q**5 + q**3 - q - qi**3 - qi**5 - qi**7) * n2**2 / (r2 * n4 * n6)
    g[5] = -(q - qi) * n3**2 * n4 / (r2 * n6)
    g[6] = qi * n2 * n8 / (r2 * n4**2)
    g[7] = -(qi**9 + qi**7 + 2 * qi**5 + qi**3 + 3 * qi) * n2**2 * n3 / (r2 * n4 * n6)
    g[8] = q**3 * n2 / (r2 * n6)
    g[9] = -2 * (q**7 + q**3 + q) * n2**2 * n3 / (r2 * n4 * n6)
    g[10] = -q * n4 * (qi * qi - q * q - 1) / (r2 * n6)
    g[11] = (q**7 + q**5 + q**3 + qi - qi**3 - qi**5) * n2**2 / (r2 * n4 * n6)
    g[12] = g[5]
    g[13] = -q * n2 * n8 / (r2 * n4**2)
    g[14] = (q**9 + q**7 + 2 * q**5 + q**3 + 3 * q) * n2**2 * n3 / (r2 * n4 * n6)
    g[15] = -qi * (2 * q**6 + q**4 + 2 * q**2 + 1 + 4 * qi**2 + 2 * qi**4 + 2 * qi**6) * n2 / (r * n3**2 * n4)
    g[16] = 2 * q * n6 / (r * n3 * n4)
    g[17] = -q * (q**6 + 2 * q**4 + 3 * q**2 + qi**2 - qi**4 - qi**6 - qi**8) * n2**2 / (r * n3 * n4 * n6)
    g[18] = qi**2 * (q - qi) * n2**2 * d1 / (r2 * n4)
    g[19] = -((q - qi) ** 2) * n2 * n3 * d1 / (r2 * n4)
    g[20] = -(qi**3) * (q - qi) * (q * q + n3) * n2 * d1 / (r2 * n4)
    g[21] = q * (2 * q**6 + 2 * q**4 + 4 * q**2 + 1 + 2 * qi**2 + qi**4 + 2 * qi**6) * n2 / (r * n3**2 * n4)
    g[22] = -2 * qi * n6 / (r * n3 * n4)
    g[23] = -qi * (q**8 + q**6 + q**4 - q**2 - 3 * qi**2 - 2 * qi**4 - qi**6) * n2**2 / (r * n3 * n4 * n6)
    g[24] = -(q**2) * (q - qi) * n2**2 * d1 / (r2 * n4)
    g[25] = g[19]
    g[26] = q**3 * (q - qi) * (qi * qi + n3) * n2 * d1 / (r2 * n4)
    g[27] = g[28] = (q - qi) ** 2 * n2 * d1 / (r * n4)
    inner = r * d2 - (q - qi) * n2 * d1 * d1 / n4
    g[29] = -qi * (q - qi) * inner / r2 + q**3 * (q**4 - qi**8 - 2 * qi**6) * n2**2 / (n3 * n4 * n6)
    g[30] = q * (q - qi) * inner / r2 + qi**3 * (q**8 - qi**4 + 2 * q**6) * n2**2 / (n3 * n4 * n6)
    cubic = (q - qi) ** 2 * n2**2 * n3 * d1**3 / (n4 * n6)
    if corrected:
        cubic = cubic / r2
    g[31] = d3 + d1 / n2**2 + cubic - (q - qi) * n2 * n3 * d1 * d2 / (r * n6)
    words = [
        "aaabbb", "aabbab", "aabbba", "abbbaa", "abbaba", "abbaab", "ababab",
        "bbbaaa", "bbaaba", "bbaaab", "baaabb", "baabab", "baabba", "bababa",
        "aaab", "aaba", "baaa", "aabb", "abba", "abab",
        "bbba", "bbab", "abbb", "bbaa", "baab", "baba",
        "aa", "bb", "ab", "ba", "",
    ]  # fmt: skip
    return _words(alg, [(w, g[i + 1]) for i, w in enumerate(words)])


def example2_displays(field=None) -> dict[str, NCPoly]:
    return {"G1": g1_display(field), "Wm1": wm1_display(field), "G2": g2_display(field)}


def third_level_displays(field=None, corrected: bool = False) -> dict[str, NCPoly]:
    wm2 = wm2_display(field, corrected)
    g3 = g3_display(field, corrected)
    return {"Wm2": wm2, "Wp3": omega_swap(wm2), "G3": g3, "Gt3": omega_swap(g3)}


# ---------------------------------------------------------------------------
# central elements over the mode alphabet
# ---------------------------------------------------------------------------


def delta_displays(field=None, k_max: int = 5) -> dict[int, NCPoly]:
    """The first three central elements, keyed by ``k`` (so ``0`` is Delta_1)."""
    M = mode_algebra(k_max, field or symbolic_field())
    F = M.field
    q, qi, r = F.q, F.qinv, F.rho
    L = lambda fam, k: mode_letter(M, fam, k)
    W0, W1, Wm1, W2, Wm2, W3 = L("Wm", 0), L("Wp", 0), L("Wm", 1), L("Wp", 1), L("Wm", 2), L("Wp", 2)
    G1, Gt1, G2, Gt2, G3, Gt3 = L("G", 0), L("Gt", 0), L("G", 1), L("Gt", 1), L("G", 2), L("Gt", 2)
    d1 = G1 + Gt1 - (W0 * W1 + W1 * W0) * (q - qi)
    s = q * q + qi * qi
    d2 = (
        G2
        + Gt2
        - (W0 * W2 * qi + W2 * W0 * q + W1 * Wm1 * qi + Wm1 * W1 * q) * ((q * q - qi * qi) / s)
        + ((W0 * W0 + W1 * W1) * s + (Gt1 * G1 + G1 * Gt1) / r) * ((q - qi) / s)
    )
    c = (q - qi) / (s - 1)
    d3 = (
        G3
        + Gt3
        - (W0 * W3 * qi * qi + W3 * W0 * q * q + W1 * Wm2 * qi * qi + Wm2 * W1 * q * q) * c
        - (W2 * Wm1 + Wm1 * W2) * c
        + ((W0 * Wm1 + W1 * W2) * s + (Gt2 * G1 + G2 * Gt1) / r) * c
        - d1 / ((q + qi) ** 2)
    )
    return {0: d1, 1: d2, 2: d3}


# ---------------------------------------------------------------------------
# enumeration tables
# ---------------------------------------------------------------------------

# weight -> monomials, in the display order; W-k is W_{-k}, Wk (k>0) is W_k
WG_TABLE = {
    0: ["1"],
    1: ["W0", "W1"],
    2: ["W0^2", "W1^2", "W0 W1", "G1"],
    3: ["W0^3", "W1^3", "W0^2 W1", "W0 W1^2", "W0 G1", "G1 W1", "W-1", "W2"],
    4: [
        "W0^4", "W1^4", "W0^3 W1", "W0^2 W1^2", "W0 W1^3", "W0^2 G1", "G1 W1^2", "W0 W-1", "W2 W1",
        "W0 G1 W1", "W-1 W1", "W0 W2", "G1^2", "G2",
    ],
    5: [
        "W0^5", "W0^4 W1", "W0^3 W1^2", "W0^2 W1^3", "W0^2 G1 W1", "W0 W1^4", "W0 G1 W1^2", "W0 G1^2",
        "W0 G2", "W-2", "W-1 G1", "W0 W2 W1", "W0 W-1 W1", "W3", "W0^2 W2", "W2 W1^2", "W-1 W1^2",
        "W0^2 W-1", "W1^5", "G1 W2", "W0^3 G1", "G1^2 W1", "G1 W1^3", "G2 W1",
    ],
    6: [
        "W0^6", "W0^5 W1", "W0^4 W1^2", "W0^4 G1", "W0^3 W1^3", "W0^3 G1 W1", "W0^3 W-1", "W0^3 W2",
        "W0^2 W1^4", "W0^2 G1 W1^2", "W0^2 W-1 W1", "W0^2 W2 W1", "W0^2 G1^2", "W0^2 G2", "W0 W1^5",
        "W0 G1 W1^3", "W0 W-1 W1^2", "W0 W2 W1^2", "W0 G1^2 W1", "W0 G2 W1", "W0 W-2", "W0 W3",
        "W0 W-1 G1", "W0 G1 W2", "G1 W1^4", "W-1 W1^3", "W2 W1^3", "G1^2 W1^2", "G2 W1^2", "W1^6",
        "W-2 W1", "W3 W1", "W-1 G1 W1", "G1 W2 W1", "G1^3", "G1 G2", "G3", "W-1^2", "W2^2", "W-1 W2",
    ],
}  # fmt: skip
# the printed weight-5 row lists "G1 W2" twice and omits "G1 W1^3"; the entry above is the corrected one
WG_TABLE_PRINTED_5 = [m if m != "G1 W1^3" else "G1 W2" for m in WG_TABLE[5]]

# length -> words in A, A*; the rows marked "+ A <-> A*" are closed under the swap by ZIGZAG_TABLE
_ZIGZAG_RAW = {
    0: (["1"], False),
    1: (["A", "A*"], False),
    2: (["A^2", "A*^2", "AA*", "A*A"], False),
    3: (["A^3", "A*^3", "A^2A*", "AA*^2", "A*^2A", "A*A^2", "AA*A", "A*AA*"], False),
    4: (["A^4", "A^3A*", "A^2A*A", "A*A^3", "A^2A*^2", "AA*^2A", "AA*AA*"], True),
    5: (
        [
            "A^5", "A^4A*", "A^3A*A", "A*A^4", "A^3A*^2", "A^2A*AA*", "A^2A*^2A", "AA*^2A^2", "A*^2A^3",
            "AA*AA*A", "AA*^3A", "A*A^2A*^2",
        ],
        True,
    ),
    6: (
        [
            "A^6", "A^5A*", "A^4A*A", "A*A^5", "A^4A*^2", "A^3A*AA*", "A^3A*^2A", "A^2A*AA*A", "A^2A*^2A^2",
            "AA*^2A^3", "A*^2A^4", "A*A^4A*", "A*A^3A*A", "A^3A*^3", "A^2A*^2AA*", "A^2A*^3A", "AA*^3A^2",
            "AA*^2AA*A", "AA*^2A^2A*", "AA*AA*AA*",
        ],
        True,
    ),
}  # fmt: skip


# the printed length-5 row contains both AA*^2A^2 and its mirror, so its swap
# closure has 22 words; these two are the ones it is missing
ZIGZAG_MISSING_5 = {"abbab", "baaba"}


def parse_zigzag_word(text: str) -> str:
    """``"A^2A*A"`` -> ``"aaba"``; ``"1"`` is the empty word."""
    if text == "1":
        return ""
    out = []
    for letter, star, exp in re.findall(r"(A)(\*?)(?:\^(\d+))?", text):
        out.append(("b" if star else "a") * int(exp or 1))
    return "".join(out)


def zigzag_table() -> dict[int, set[str]]:
    out = {}
    for n, (words, closed) in _ZIGZAG_RAW.items():
        ws = {parse_zigzag_word(w) for w in words}
        if closed:
            ws |= {w.translate(str.maketrans("ab", "ba")) for w in ws}
        out[n] = ws
    return out


# ---------------------------------------------------------------------------
# transition matrix rows (zig-zag word -> coefficient)
# ---------------------------------------------------------------------------


def transition_rows(field=None) -> dict[str, dict[str, object]]:
    """Rows of the low-weight transition table that are unambiguous as printed.

    Keys are WG monomials as in :data:`WG_TABLE`; inner keys are zig-zag words
    over ``a, b``.  Zero entries are omitted.
    """
    F = field or symbolic_field()
    q, qi, r = F.q, F.qinv, F.rho
    d1, d2 = F.delta(1), F.delta(2)
    n2, n3, n4 = qnum(2, F), qnum(3, F), qnum(4, F)
    sa = d1 * (q - qi) / r
    sb = n4 / (r * n2)
    sc = qi**2 * n2**2 / (r * n4)
    sd = -(q**2) * n2**2 / (r * n4)
    se = (q - qi) * n2 / n4
    sf = -(qi**5 + qi**3 + 2 * qi) * n2 / (r * n4)
    sg = (q**5 + q**3 + 2 * q) * n2 / (r * n4)
    sh = -(q - qi) * n2 * n3 / (r * n4)
    sj = d2 - d1 * d1 * (q - qi) * n2 / (r * n4)
    si = -(qi**2) * n2 / n3
    rows = {
        "G1": {"": d1, "ab": -qi, "ba": q},
        "W0 G1": {"a": d1, "aab": -qi, "aba": q},
        "G1 W1": {"b": d1, "abb": -qi, "bab": q},
        "W-1": {"a": sa, "aab": -1 / r, "aba": sb, "baa": -1 / r, "b": F.one},
        "W2": {"b": sa, "abb": -1 / r, "bab": sb, "bba": -1 / r, "a": F.one},
        "W0^2 G1": {"aa": d1, "aaab": -qi, "aaba": q},
        "W0 G1 W1": {"ab": d1, "aabb": -qi, "abab": q},
        "G1 W1^2": {"bb": d1, "ab": -q * r / n3, "ba": q * r / n3, "abbb": si, "bbba": -q / n3, "bbab": q},
        "W-1 W1": {"bb": F.one, "ab": sa, "aabb": -1 / r, "abab": sb, "baab": -1 / r},
        "W0 W2": {"aa": F.one, "ab": sa, "aabb": -1 / r, "abab": sb, "abba": -1 / r},
        "G1^2": {"": d1 * d1, "ab": -2 * qi * d1, "ba": 2 * q * d1, "abab": qi**2, "baab": -F.one, "abba": -F.one, "baba": q**2},
        "G2": {
            "": sj, "aa": se, "bb": se, "ab": -sa * qi, "ba": sa * q, "aabb": sc,
            "abab": sf, "baab": sh, "abba": sh, "baba": sg, "bbaa": sd,
        },
    }  # fmt: skip
    return rows


# (row, column word) cells whose printed value is garbled; left out of partial rows
AMBIGUOUS_CELLS = {("W0 W-1", "aaba"), ("W2 W1", "bbab")}


def transition_partial_rows(field=None) -> dict[str, dict[str, object]]:
    """Rows with one unreadable cell; every other nonzero entry is listed."""
    F = field or symbolic_field()
    q, qi, r = F.q, F.qinv, F.rho
    n2, n3, n4 = qnum(2, F), qnum(3, F), qnum(4, F)
    sa = F.delta(1) * (q - qi) / r
    sb = n4 / (r * n2)
    return {
        "W0 W-1": {"aa": sa, "ab": r * sb / n3, "ba": 1 / n3, "aaab": -sb / n3, "baaa": -1 / (r * n3)},
        "W2 W1": {"bb": sa, "ba": r * sb / n3, "ab": 1 / n3, "bbba": -sb / n3, "abbb": -1 / (r * n3)},
    }
