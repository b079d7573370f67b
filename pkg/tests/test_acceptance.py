"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run ``pytest tests/test_acceptance.py -v`` to see the lines, or execute this
file directly for just the summary.  Two published statements are false as
printed.  Their tests are strict ``xfail``: they report FAIL and would turn
into an error if they ever started to pass.
"""

from __future__ import annotations

import random
import time

import pytest

from qonsager.bases import WGIndex, gf_coefficients, wg_enumerate, zigzag_enumerate
from qonsager.ncpoly import commutator, core_algebra, omega_swap
from qonsager.reference import (
    delta_displays,
    example2_displays,
    third_level_displays,
    transition_rows,
)
from qonsager.rewrite import complete
from qonsager.scalars import (
    EvaluationError,
    SpecializationPoint,
    SpecializedField,
    agreement_points,
    specialize,
    symbolic_field,
)
from qonsager.series import delta_mode_oracle, mode_algebra, mode_swap
from qonsager.tower import Tower, delta_abstract
from qonsager.transition import check_invertible, transition_matrix
from qonsager.verify import Context, RunConfig, delta3_ordering_commutators, run_suite

LINES: dict[str, str] = {}


def emit(label: str, ok: bool, detail: str, capsys=None):
    line = f"criterion {label}: {'PASS' if ok else 'FAIL'} ({detail})"
    LINES[label] = line
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)


@pytest.fixture(scope="module")
def sym():
    F = symbolic_field()
    return F, Tower(F), complete(8, F)


def _spec(point: SpecializationPoint):
    F = SpecializedField(point)
    return F, Tower(F), complete(8, F)


# ---------------------------------------------------------------------------
# 1. low generators
# ---------------------------------------------------------------------------


def criterion_1(F, T):
    shown = example2_displays(F)
    got = {"G1": T.gen("G", 0), "Wm1": T.gen("Wm", 1), "G2": T.gen("G", 1)}
    bad = [k for k in shown if got[k] != shown[k]]
    return not bad, f"G1, W-1, G2 literal equality; mismatches: {bad or 'none'}"


def test_criterion_1(sym, capsys):
    F, T, _ = sym
    t = time.perf_counter()
    ok, detail = criterion_1(F, T)
    elapsed = time.perf_counter() - t
    emit("1", ok and elapsed < 1, f"{detail}; {elapsed:.2f}s", capsys)
    assert ok and elapsed < 1


# ---------------------------------------------------------------------------
# 2. third-level generators against the printed displays
# ---------------------------------------------------------------------------


def criterion_2(F, T, rs, corrected=False):
    shown = third_level_displays(F, corrected)
    got = {"Wm2": T.gen("Wm", 2), "G3": T.gen("G", 2)}
    bad = [k for k in got if rs.normal_form(got[k] - shown[k])]
    return not bad, bad


@pytest.mark.xfail(strict=True, reason="four printed coefficients are inconsistent with the recursion")
def test_criterion_2(sym, capsys):
    F, T, rs = sym
    t = time.perf_counter()
    ok, bad = criterion_2(F, T, rs)
    _, bad_amended = criterion_2(F, T, rs, corrected=True)
    elapsed = time.perf_counter() - t
    emit("2", ok, f"printed displays differ modulo the ideal for {bad or 'none'}; "
         f"with four amended coefficients: {bad_amended or 'no differences'}; {elapsed:.2f}s", capsys)  # fmt: skip
    assert ok


def test_criterion_2_amended_display_agrees(sym):
    F, T, rs = sym
    assert criterion_2(F, T, rs, corrected=True) == (True, [])


# ---------------------------------------------------------------------------
# 3. central elements: closed form, series oracle, published expansions
# ---------------------------------------------------------------------------


def criterion_3(F, T, rs):
    M = T.modes
    oracle = all(delta_abstract(k, M) == delta_mode_oracle(k, algebra=M) for k in range(5))
    shown = delta_displays(F)
    verbatim01 = all(delta_abstract(k, M) == shown[k] for k in (0, 1))
    diff = delta_abstract(2, M) - shown[2]
    comms = delta3_ordering_commutators(M)
    explained = diff == comms["combination"]
    vanish = all(not rs.normal_form(T.substitute_modes(c)) for c in comms["parts"].values())
    return oracle, verbatim01, explained and vanish, not diff


def test_criterion_3(sym, capsys):
    F, T, rs = sym
    t = time.perf_counter()
    oracle, verbatim01, modulo, literal = criterion_3(F, T, rs)
    elapsed = time.perf_counter() - t
    emit("3", oracle and verbatim01 and modulo and literal,
         f"oracle k=0..4: {oracle}; verbatim k=0,1: {verbatim01}; "
         f"k=2 equal up to mode commutators that vanish modulo the ideal: {modulo}; "
         f"k=2 literal: {literal}; {elapsed:.2f}s", capsys)  # fmt: skip
    assert oracle and verbatim01 and modulo and elapsed < 30


@pytest.mark.xfail(strict=True, reason="the printed third element merges orderings of commuting modes")
def test_criterion_3_literal_third_element(sym):
    F, T, rs = sym
    assert criterion_3(F, T, rs)[3]


# ---------------------------------------------------------------------------
# 4. central elements reduce to scalars
# ---------------------------------------------------------------------------


def criterion_4(F, T, rs, top=2):
    M = T.modes
    alg = core_algebra(F)
    first = T.substitute_modes(delta_abstract(0, M)) == alg.scalar(2 * F.delta(1))
    later = {k: rs.normal_form(T.substitute_modes(delta_abstract(k, M))) == alg.scalar(2 * F.delta(k + 1))
             for k in range(1, top + 1)}  # fmt: skip
    return first, later


def test_criterion_4(sym, capsys):
    F, T, rs = sym
    t = time.perf_counter()
    pre = [criterion_4(*_spec(p)) for p in agreement_points()]
    pre_time = time.perf_counter() - t
    first, later = criterion_4(F, T, rs)
    ok = first and all(later.values()) and all(f and all(l.values()) for f, l in pre)
    emit("4", ok and pre_time < 5,
         f"Delta_1 = 2 delta_1 identically: {first}; Delta_2, Delta_3 reduce to 2 delta (evidence): {later}; "
         f"specialized pre-pass {pre_time:.2f}s", capsys)  # fmt: skip
    assert ok and pre_time < 5


# ---------------------------------------------------------------------------
# 5. commutation identities
# ---------------------------------------------------------------------------


def criterion_5(F, T, rs):
    a, b = core_algebra(F).gens()
    checks = {
        "[W0,W-1]": commutator(a, T.gen("Wm", 1)),
        "[W1,W2]": commutator(b, T.gen("Wp", 1)),
        "[W0,W-2] (evidence)": commutator(a, T.gen("Wm", 2)),
        "[W1,W3] (evidence)": commutator(b, T.gen("Wp", 2)),
        "[W0,W2]-[W-1,W1]": commutator(a, T.gen("Wp", 1)) - commutator(T.gen("Wm", 1), b),
    }
    return {k: not rs.normal_form(v) for k, v in checks.items()}


def test_criterion_5(sym, capsys):
    F, T, rs = sym
    res = criterion_5(F, T, rs)
    emit("5", all(res.values()), ", ".join(f"{k} -> 0: {v}" for k, v in res.items()), capsys)
    assert all(res.values())


# ---------------------------------------------------------------------------
# 6. dimension tables
# ---------------------------------------------------------------------------

PUBLISHED = [1, 2, 4, 8, 14, 24, 40]


def criterion_6(rs):
    t = time.perf_counter()
    zz = [len(zigzag_enumerate(n)) for n in range(11)]
    wg = [len(wg_enumerate(n)) for n in range(11)]
    over, verma = gf_coefficients("overpartition", 10), gf_coefficients("verma", 10)
    elapsed = time.perf_counter() - t
    dims = [rs.graded_dim(d) for d in range(7)]
    ok = dims == PUBLISHED and zz[:7] == PUBLISHED and zz == wg == over == verma
    return ok, elapsed, zz


def test_criterion_6(sym, capsys):
    ok, elapsed, seq = criterion_6(sym[2])
    emit("6", ok and elapsed < 5, f"graded_dim 0..6 = {PUBLISHED}; all four sequences to 10 = {seq}; "
         f"{elapsed:.2f}s", capsys)  # fmt: skip
    assert ok and elapsed < 5


# ---------------------------------------------------------------------------
# 7. transition matrices
# ---------------------------------------------------------------------------


def criterion_7(F, T, rs):
    t = time.perf_counter()
    rep4 = check_invertible(transition_matrix(4, rs, T))
    t4 = time.perf_counter() - t
    gold = transition_rows(F)
    golden = all(rep4.row_dict(n) == gold[n] for n in gold)
    required = all(rep4.row_dict(n) == gold[n] for n in ("G1", "W-1", "W2", "W0 G1"))
    ranks = {}
    for W in (5, 6):
        ranks[W] = check_invertible(transition_matrix(W, rs, T)).rank
    return rep4, t4, golden and required, ranks


def test_criterion_7(sym, capsys):
    F, T, rs = sym
    rep4, t4, golden, ranks = criterion_7(F, T, rs)
    t = time.perf_counter()
    Fs, Ts, rss = _spec(SpecializationPoint.default())
    spec6 = check_invertible(transition_matrix(6, rss, Ts)).rank
    ts = time.perf_counter() - t
    ok = (len(rep4.rows), len(rep4.cols), rep4.rank) == (29, 29, 29) and golden
    evidence = ranks == {5: 53, 6: 93} and spec6 == 93
    emit("7", ok and evidence and t4 < 60 and ts < 60,
         f"29x29 rank {rep4.rank} in {t4:.2f}s; golden rows: {golden}; cumulative ranks (evidence) {ranks}; "
         f"specialized W=6 rank {spec6} in {ts:.2f}s", capsys)  # fmt: skip
    assert ok and evidence and t4 < 60 and ts < 60


# ---------------------------------------------------------------------------
# 8. properties and three-point agreement
# ---------------------------------------------------------------------------


def _random_poly(rng: random.Random, alg, pool, max_len=4, max_terms=4):
    out = alg.zero
    for _ in range(rng.randint(1, max_terms)):
        word = "".join(rng.choice("ab") for _ in range(rng.randint(0, max_len)))
        out = out + alg.monomial(word) * rng.choice(pool)
    return out


def _random_scalar(rng: random.Random, F):
    atoms = [F.q, F.qinv, F.rho, F.delta(1), F.delta(2), F(2), F(-3)]
    x = rng.choice(atoms)
    for _ in range(rng.randint(1, 4)):
        y = rng.choice(atoms) + rng.randint(-2, 2)
        op = rng.choice("+-*/")
        x = {"+": x + y, "-": x - y, "*": x * y, "/": x / y if y else x}[op]
    return x


def properties(F, T, rs) -> dict[str, bool]:
    rng = random.Random(20241016)
    alg = core_algebra(F)
    q, r, d1 = F.q, F.rho, F.delta(1)
    pool = [F.one, F(-2), q, F.qinv, r, d1, (q + F.qinv) / r]
    out = {}
    ok = True
    for _ in range(100):
        x, y = _random_poly(rng, alg, pool), _random_poly(rng, alg, pool)
        ok &= omega_swap(omega_swap(x)) == x and omega_swap(x * y) == omega_swap(x) * omega_swap(y)
    out["omega involution and homomorphism (100 pairs)"] = ok
    M = mode_algebra()
    out["Delta fixed by the swap, k <= 3"] = all(mode_swap(delta_abstract(k, M)) == delta_abstract(k, M) for k in range(4))
    out["degree law, k <= 4"] = all(
        (T.gen("Wm", k).degree(), T.gen("Wp", k).degree(), T.gen("G", k).degree(), T.gen("Gt", k).degree())
        == (2 * k + 1, 2 * k + 1, 2 * k + 2, 2 * k + 2)
        for k in range(5)
    )
    ok = True
    for _ in range(100):
        x, y = _random_poly(rng, alg, pool, 8), _random_poly(rng, alg, pool, 8)
        nx, ny = rs.normal_form(x), rs.normal_form(y)
        ok &= rs.normal_form(nx) == nx and rs.normal_form(x + y * q) == nx + ny * q
    out["normal form idempotent and linear (100 inputs)"] = ok
    ok, n = True, 0
    pts = agreement_points()
    while n < 100:
        x, y = _random_scalar(rng, F), _random_scalar(rng, F)
        for p in pts:
            try:
                sx, sy = specialize(x, p), specialize(y, p)
            except EvaluationError:
                continue
            ok &= specialize(x + y, p) == sx + sy and specialize(x * y, p) == sx * sy
        n += 1
    out["specialize is a homomorphism (100 pairs x 3 points)"] = ok
    return out


def agreement(F, T, rs, point) -> dict[str, bool]:
    """Every criterion recomputed over the specialized field matches the symbolic result."""
    Fs, Ts, rss = _spec(point)
    alg = core_algebra(Fs)
    lift = alg.map_coefficients
    out = {}
    out["1"] = criterion_1(Fs, Ts)[0] and all(
        Ts.gen(f, k) == lift(T.gen(f, k)) for f, k in [("G", 0), ("Wm", 1), ("G", 1)]
    )
    out["2"] = criterion_2(Fs, Ts, rss) == criterion_2(F, T, rs) and criterion_2(Fs, Ts, rss, True)[0]
    out["3"] = criterion_3(Fs, Ts, rss) == criterion_3(F, T, rs)
    first, later = criterion_4(Fs, Ts, rss)
    out["4"] = first and all(later.values())
    out["5"] = criterion_5(Fs, Ts, rss) == criterion_5(F, T, rs)
    out["6"] = [rss.graded_dim(d) for d in range(9)] == [rs.graded_dim(d) for d in range(9)]
    rep = transition_matrix(4, rss, Ts)
    sym4 = transition_matrix(4, rs, T)
    same = all(rep.matrix[i][j] == Fs(sym4.matrix[i][j]) for i in range(29) for j in range(29))
    out["7"] = same and check_invertible(rep).rank == 29
    sym_report = run_suite("all", RunConfig(), Context(RunConfig()))
    spec_report = run_suite("all", RunConfig(mode="specialized", point=point))
    statuses = lambda rep: [(c["name"], c["status"]) for s in rep["suites"] for c in s["checks"]]
    out["suite statuses"] = statuses(sym_report) == statuses(spec_report)
    return out


def test_criterion_8(sym, capsys):
    F, T, rs = sym
    props = properties(F, T, rs)
    agree = {str(p.q): agreement(F, T, rs, p) for p in agreement_points()}
    ok = all(props.values()) and all(all(v.values()) for v in agree.values())
    failed = [k for k, v in props.items() if not v] + [
        f"q={q}: {k}" for q, v in agree.items() for k, good in v.items() if not good
    ]
    emit("8", ok, f"{len(props)} property groups, 3-point agreement on criteria 1-7 and every suite check; "
         f"failures: {failed or 'none'}", capsys)  # fmt: skip
    assert ok


if __name__ == "__main__":
    F = symbolic_field()
    T, rs = Tower(F), complete(8, F)
    sym_ = (F, T, rs)
    for fn in (test_criterion_1, test_criterion_2, test_criterion_3, test_criterion_4,
               test_criterion_5, test_criterion_6, test_criterion_7, test_criterion_8):  # fmt: skip
        try:
            fn(sym_, None)
        except AssertionError:
            pass
