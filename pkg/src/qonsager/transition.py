"""Change of basis from zig-zag words to WG monomials.

Each WG monomial is expanded through the tower, reduced, and written in the
zig-zag basis by solving against the normal forms of the zig-zag words one
degree at a time.  The resulting matrix is block lower triangular by weight,
and its rank is the evidence that the WG monomials are independent.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable

from .bases import WGIndex, ZigzagIndex, wg_enumerate, zigzag_enumerate
from .errors import DegreeBoundError, DomainError
from .linalg import bareiss, inverse, left_kernel_vector
from .ncpoly import NCPoly
from .rewrite import RewriteSystem
from .scalars import SpecializationPoint, SpecializedField, format_coeff
from .tower import Tower


def wg_expand(idx: WGIndex, tower: Tower) -> NCPoly:
    """The WG monomial as a polynomial in ``a, b``."""
    out = tower.core.one
    for fam, k, e in idx.factors():
        g = tower.gen(fam, k)
        for _ in range(e):
            out = out * g
    return out


@dataclass
class TransitionReport:
    weight_bound: int
    rows: list[WGIndex]
    cols: list[ZigzagIndex]
    matrix: list[list]  # dense; rows x cols
    field: object
    rank: int | None = None
    invertible: bool | None = None
    certificate: dict | None = None
    structural: list[str] = dc_field(default_factory=list)
    spot_checks: list[dict] = dc_field(default_factory=list)

    @property
    def square(self) -> bool:
        return len(self.rows) == len(self.cols)

    def entry(self, row: str | WGIndex, col: str | ZigzagIndex):
        r = WGIndex.parse(row) if isinstance(row, str) else row
        c = ZigzagIndex.from_word(col) if isinstance(col, str) else col
        return self.matrix[self.rows.index(r)][self.cols.index(c)]

    def row_dict(self, row: str | WGIndex) -> dict[str, object]:
        """Nonzero entries of a row keyed by zig-zag word over ``a, b``."""
        r = WGIndex.parse(row) if isinstance(row, str) else row
        vals = self.matrix[self.rows.index(r)]
        return {c.word: v for c, v in zip(self.cols, vals) if v}

    def to_json(self) -> dict:
        entries = []
        for i, row in enumerate(self.matrix):
            for j, v in enumerate(row):
                if v:
                    entries.append({"row": i, "col": j, "value": format_coeff(v)})
        return {
            "weight_bound": self.weight_bound,
            "rows": [r.to_json() for r in self.rows],
            "cols": [c.to_json() for c in self.cols],
            "entries": entries,
            "rank": self.rank,
            "invertible": self.invertible,
            "certificate": self.certificate,
            "structural": self.structural,
            "spot_checks": self.spot_checks,
        }


def _dense(poly: NCPoly, index: dict[str, int], zero) -> list:
    v = [zero] * len(index)
    for w, c in poly.terms.items():
        v[index[w]] = c
    return v


def transition_matrix(
    W: int, rs: RewriteSystem, tower: Tower, progress: Callable[[str], None] | None = None
) -> TransitionReport:
    """Rows: WG monomials of weight <= W.  Columns: zig-zag words of length <= W."""
    if W < 0:
        raise DomainError("weight bound must be nonnegative")
    if rs.degree_bound < W:
        raise DegreeBoundError(f"transition up to weight {W} needs a rewrite system complete to degree {W}")
    if rs.field is not tower.field:
        raise DomainError("rewrite system and tower must share a coefficient field")
    F = tower.field
    zero, one = F.zero, F.one
    rows = [idx for w in range(W + 1) for idx in wg_enumerate(w)]
    cols = [z for n in range(W + 1) for z in zigzag_enumerate(n)]
    report = TransitionReport(W, rows, cols, [], F)

    normal = {d: rs.normal_words(d) for d in range(W + 1)}
    nw_index = {w: i for i, w in enumerate(x for d in range(W + 1) for x in normal[d])}
    if len(nw_index) != len(cols):
        report.structural.append(
            f"{len(cols)} zig-zag words but {len(nw_index)} normal words up to degree {W}"
        )
    if len(rows) != len(cols):
        report.structural.append(f"{len(rows)} WG monomials but {len(cols)} zig-zag words")

    # normal forms of the zig-zag words, and the inverse of each top-degree block
    zz_nf = {c: _dense(rs.normal_form(tower.core.monomial(c.word)), nw_index, zero) for c in cols}
    blocks = {}
    for d in range(W + 1):
        dcols = [c for c in cols if c.length == d]
        dwords = [nw_index[w] for w in normal[d]]
        if len(dcols) != len(dwords):
            blocks[d] = None
            continue
        block = [[zz_nf[c][j] for j in dwords] for c in dcols]
        inv = inverse(block, zero, one)
        if inv is None:
            report.structural.append(f"zig-zag words of length {d} are dependent modulo the relations")
        blocks[d] = (dcols, dwords, inv)

    col_pos = {c: j for j, c in enumerate(cols)}
    for i, r in enumerate(rows):
        if progress and i % 10 == 0:
            progress(f"transition row {i + 1}/{len(rows)} (weight {r.weight})")
        v = _dense(rs.normal_form(wg_expand(r, tower)), nw_index, zero)
        x = [zero] * len(cols)
        for d in range(W, -1, -1):
            blk = blocks.get(d)
            if blk is None or blk[2] is None:
                continue
            dcols, dwords, inv = blk
            vd = [v[j] for j in dwords]
            if not any(vd):
                continue
            xd = [zero] * len(dcols)
            for k, a in enumerate(vd):
                if a:
                    for t, b in enumerate(inv[k]):
                        if b:
                            xd[t] = xd[t] + a * b
            for t, c in enumerate(dcols):
                if xd[t]:
                    x[col_pos[c]] = xd[t]
                    row = zz_nf[c]
                    v = [vi - xd[t] * zi if zi else vi for vi, zi in zip(v, row)]
        if any(v):
            report.structural.append(f"row {r.render()} is not in the span of the zig-zag words")
        report.matrix.append(x)
    return report


def _parity(perm: list[int]) -> int:
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                length += 1
            if length % 2 == 0:
                sign = -sign
    return sign


def _row_col_orders(report: TransitionReport) -> tuple[list[list], list[int], int]:
    # rows by descending weight, columns by descending length; also the sign
    # relating the determinant of the reordered matrix to the original one
    order_r = sorted(range(len(report.rows)), key=lambda i: -report.rows[i].weight)
    order_c = sorted(range(len(report.cols)), key=lambda j: -report.cols[j].length)
    return [report.matrix[i] for i in order_r], order_c, _parity(order_r) * _parity(order_c)


def check_invertible(report: TransitionReport, point: SpecializationPoint | None = None) -> TransitionReport:
    """Exact rank, plus a determinant value at ``point`` or a kernel vector."""
    F = report.field
    zero, one = F.zero, F.one
    mat, order_c, sign = _row_col_orders(report)
    elim = bareiss(mat, zero, one, order_c)
    report.rank = elim.rank
    n = len(report.rows)
    report.invertible = report.square and elim.rank == n and not report.structural
    if report.invertible:
        point = point or SpecializationPoint.default(getattr(F, "n_deltas", 6) or 6)
        if isinstance(F, SpecializedField):
            det = elim.determinant * sign
            at = F.point
        else:
            spec = SpecializedField(point)
            smat = [[spec(x) if x else spec.zero for x in row] for row in mat]
            det = bareiss(smat, spec.zero, spec.one, order_c).determinant * sign
            at = point
        report.certificate = {"determinant_at_point": format_coeff(det), "point": at.to_json()}
    elif report.square:
        ker = left_kernel_vector(report.matrix, zero, one)
        if ker is not None:
            report.certificate = {
                "kernel": [
                    {"row": report.rows[i].render(), "coeff": format_coeff(c)} for i, c in enumerate(ker) if c
                ]
            }
    return report


def block_ranks(report: TransitionReport) -> dict[int, tuple[int, int]]:
    """Per weight ``w``: (rank of the diagonal block, its size)."""
    F = report.field
    out = {}
    for w in range(report.weight_bound + 1):
        ri = [i for i, r in enumerate(report.rows) if r.weight == w]
        ci = [j for j, c in enumerate(report.cols) if c.length == w]
        block = [[report.matrix[i][j] for j in ci] for i in ri]
        out[w] = (bareiss(block, F.zero, F.one).rank if block else 0, len(ri))
    return out
