"""Closed-form central elements and the recursive tower of generators.

The central elements ``Delta_{k+1}`` are written over the mode alphabet with
explicit coefficients ``c, d, e, f``.  Solving them one at a time for the
newest ``G`` mode, and combining with the q-commutator relations that link
the ``W`` modes, expresses every mode as a polynomial in the two core
generators ``a = W_0`` and ``b = W_1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ConfigurationError, DomainError
from .ncpoly import FreeAlgebra, NCPoly, commutator, core_algebra, omega_swap, q_commutator
from .scalars import symbolic_field
from .series import FAMILIES, mode_algebra, mode_letter, u_power_coeff


def parity_bar(k: int) -> int:
    """1 for even ``k``, 0 for odd ``k``."""
    return 1 - k % 2


def _w(i: int, m: int, field):
    # w_{-1} = 0 convention used by the f coefficients
    return field.zero if m < 0 else u_power_coeff(i, m, field)


def coeff_c(k: int, field=None):
    """Leading coefficient: the ``x^(k+1)`` part of Delta(u) is ``c * Delta_{k+1}``."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    field = field or symbolic_field()
    q, qi = field.q, field.qinv
    return -((q + qi) ** (k + 1)) * (q ** (k + 1) + qi ** (k + 1)) * qi ** (2 * k + 2)


def coeff_d(l: int, k: int, field=None):
    """Coefficient of ``G_{2(l+1)-kbar} + G~_{2(l+1)-kbar}`` in Delta_{k+1}, ``0 <= l < k//2``."""
    if not 0 <= l < k // 2:
        raise DomainError(f"d_{l} is defined for 0 <= l < {k // 2} when k = {k}")
    field = field or symbolic_field()
    kb = parity_bar(k)
    qi = field.qinv
    w = _w(2 * l + 1 - kb, k // 2 - l, field)
    return -w * (field.one + qi ** (2 * k + 2)) / coeff_c(k, field)


def _f_range(i: int, j: int, k: int) -> int:
    kb = parity_bar(k)
    s = i + j + kb - 1
    if i < 0 or j < 0 or s % 2 or not 0 <= s // 2 <= k // 2:
        raise DomainError(f"f_{{{i},{j}}} does not occur in Delta_{k + 1}")
    return k // 2 - s // 2


def _e_range(i: int, j: int, k: int) -> int:
    kb = parity_bar(k)
    s = i + j - kb
    if i < 0 or j < 0 or s % 2 or not 0 <= s // 2 <= k // 2 - kb:
        raise DomainError(f"e_{{{i},{j}}} does not occur in Delta_{k + 1}")
    return k // 2 - (i + j + kb) // 2


def coeff_f(i: int, j: int, k: int, field=None):
    """Coefficient of the mixed W bilinear ``(q-q^-1)(W_{-i}W_{j+1} + W_{i+1}W_{-j})``."""
    M = _f_range(i, j, k)
    field = field or symbolic_field()
    qi = field.qinv
    total = field.zero
    for m in range(M + 1):
        total = total + _w(i, M - m, field) * (_w(j, m, field) + _w(j, m - 1, field)) * qi ** (2 * j + 4 * m)
    return total / coeff_c(k, field)


def coeff_e(i: int, j: int, k: int, field=None):
    """Coefficient of the same-sign bilinear combining ``W W`` and ``G G~`` products."""
    M = _e_range(i, j, k)
    field = field or symbolic_field()
    qi = field.qinv
    total = field.zero
    for m in range(M + 1):
        total = total + _w(i, M - m, field) * _w(j, m, field) * qi ** (2 * j + 4 * m + 2)
    return -total / coeff_c(k, field)


def f_pairs(k: int) -> list[tuple[int, int]]:
    kb = parity_bar(k)
    return [(i, s - i) for l in range(k // 2 + 1) for s in [2 * l + 1 - kb] for i in range(s + 1)]


def e_pairs(k: int) -> list[tuple[int, int]]:
    kb = parity_bar(k)
    return [(i, s - i) for l in range(k // 2 - kb + 1) for s in [2 * l + kb] for i in range(s + 1)]


# ---------------------------------------------------------------------------
# building blocks over the mode alphabet
# ---------------------------------------------------------------------------


def g_sum(alg: FreeAlgebra, n: int) -> NCPoly:
    """``G_n + G~_n``."""
    return mode_letter(alg, "G", n - 1) + mode_letter(alg, "Gt", n - 1)


def w_mixed(alg: FreeAlgebra, i: int, j: int) -> NCPoly:
    F = alg.field
    Wm, Wp = (lambda k: mode_letter(alg, "Wm", k)), (lambda k: mode_letter(alg, "Wp", k))
    return (Wm(i) * Wp(j) + Wp(i) * Wm(j)) * (F.q - F.qinv)


def f_same(alg: FreeAlgebra, i: int, j: int) -> NCPoly:
    F = alg.field
    q, qi = F.q, F.qinv
    Wm, Wp = (lambda k: mode_letter(alg, "Wm", k)), (lambda k: mode_letter(alg, "Wp", k))
    G, Gt = (lambda k: mode_letter(alg, "G", k)), (lambda k: mode_letter(alg, "Gt", k))
    ww = (Wm(i) * Wm(j) + Wp(i) * Wp(j)) * (q * q + qi * qi)
    gg = (G(i) * Gt(j) + Gt(i) * G(j)) / F.rho
    return (ww + gg) * (q - qi)


def delta_abstract(k: int, algebra: FreeAlgebra | None = None, *, include_leading: bool = True) -> NCPoly:
    """Delta_{k+1} over the mode alphabet from the closed-form coefficients."""
    if k < 0:
        raise DomainError("k must be nonnegative")
    alg = algebra or mode_algebra()
    F = alg.field
    kb = parity_bar(k)
    out = g_sum(alg, k + 1) if include_leading else alg.zero
    for l in range(k // 2):
        out = out + g_sum(alg, 2 * (l + 1) - kb) * coeff_d(l, k, F)
    for i, j in f_pairs(k):
        out = out + w_mixed(alg, i, j) * coeff_f(i, j, k, F)
    for i, j in e_pairs(k):
        out = out + f_same(alg, i, j) * coeff_e(i, j, k, F)
    return out


# ---------------------------------------------------------------------------
# the tower
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GenKind:
    family: str
    k: int

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise DomainError(f"unknown generator family {self.family!r}; expected one of {FAMILIES}")
        if self.k < 0:
            raise DomainError("generator index must be nonnegative")

    @property
    def name(self) -> str:
        return f"Wm{self.k}" if self.family == "Wm" else f"{self.family}{self.k + 1}"


class Tower:
    """Memoized expressions of the mode generators in the core generators.

    ``gen("G", k)`` needs ``delta_{k+1}``, so the field must carry at least
    ``k+1`` deltas.
    """

    def __init__(self, field=None, k_max: int = 5):
        self.field = field or symbolic_field()
        self.core = core_algebra(self.field)
        self.modes = mode_algebra(k_max, self.field)
        self.k_max = k_max
        a, b = self.core.gens()
        self._memo: dict[tuple[str, int], NCPoly] = {("Wm", 0): a, ("Wp", 0): b}

    def gen(self, family: str, k: int) -> NCPoly:
        key = GenKind(family, k)
        hit = self._memo.get((key.family, key.k))
        if hit is not None:
            return hit
        if k > self.k_max:
            raise ConfigurationError(f"{key.name} is beyond k_max = {self.k_max}")
        if family == "G":
            val = self._solve_g(k)
        elif family == "Gt":
            val = omega_swap(self.gen("G", k))
        elif family == "Wm":
            val = q_commutator(self.core.gen("a"), self.gen("G", k - 1)) / self.field.rho + self.gen("Wp", k - 1)
        else:
            val = omega_swap(self.gen("Wm", k))
        return self._memo.setdefault((family, k), val)

    def _solve_g(self, k: int) -> NCPoly:
        F = self.field
        rest = self.substitute_modes(delta_abstract(k, self.modes, include_leading=False))
        a = self.core.gen("a")
        bracket = commutator(self.gen("Wp", k), a) * ((F.q + F.qinv) / F(2))
        return rest * (F.one / F(-2)) + bracket + self.core.scalar(F.delta(k + 1))

    def substitute_modes(self, p: NCPoly) -> NCPoly:
        """Replace every mode letter of ``p`` by its expression in ``a``, ``b``."""
        alpha = p.ring.alphabet
        cache: dict[str, NCPoly] = {}
        out = self.core.zero
        for word, c in p.terms.items():
            term = self.core.scalar(c)
            for ch in word:
                if ch not in cache:
                    cache[ch] = self.gen(*alpha.decode(ch))
                term = term * cache[ch]
            out = out + term
        return out


_TOWERS: dict = {}


def tower_for(field=None, k_max: int = 5) -> Tower:
    field = field or symbolic_field()
    key = (id(field), k_max)
    t = _TOWERS.get(key)
    if t is None or t.field is not field:
        t = _TOWERS.setdefault(key, Tower(field, k_max))
    return t


def gen(family: str, k: int, field=None) -> NCPoly:
    return tower_for(field).gen(family, k)
