"""Truncated series in ``x = u^-2`` (or ``x = u^2``) with noncommutative coefficients.

This module expands the generating function Delta(u) of the central elements
directly from the mode expansions of the four currents.  Nothing here uses
the closed-form coefficients of :mod:`qonsager.tower`; the expansion of
``U(u)^(-1-i)`` is obtained by genuine power-series arithmetic, so the result
serves as an independent oracle for the closed form.
"""

from __future__ import annotations

from math import comb

from .errors import ConfigurationError, DomainError, UsageError
from .ncpoly import Alphabet, FreeAlgebra, NCPoly
from .scalars import symbolic_field

FAMILIES = ("Wm", "Wp", "G", "Gt")
DEFAULT_K_MAX = 5


def mode_name(family: str, k: int) -> str:
    """Letter name for a mode generator with zero-based index ``k``.

    ``Wm k`` is W_{-k}; ``Wp``, ``G`` and ``Gt`` carry the subscript ``k+1``.
    """
    if family not in FAMILIES:
        raise DomainError(f"unknown mode family {family!r}")
    if k < 0:
        raise DomainError("mode index must be nonnegative")
    return f"Wm{k}" if family == "Wm" else f"{family}{k + 1}"


class ModeAlphabet(Alphabet):
    """Letters for W_{-k}, W_{k+1}, G_{k+1}, G~_{k+1} with 0 <= k <= k_max."""

    def __init__(self, k_max: int = DEFAULT_K_MAX):
        if k_max < 0:
            raise ConfigurationError("k_max must be nonnegative")
        self.k_max = k_max
        super().__init__(mode_name(f, k) for f in FAMILIES for k in range(k_max + 1))

    def letter(self, family: str, k: int) -> str:
        if k > self.k_max:
            raise ConfigurationError(f"mode letter {mode_name(family, k)} needs k_max >= {k} (have {self.k_max})")
        return self.code_of[mode_name(family, k)]

    def decode(self, code: str) -> tuple[str, int]:
        """``(family, k)`` of a letter code."""
        name = self.name_of[code]
        for fam in ("Gt", "Wm", "Wp", "G"):
            if name.startswith(fam):
                n = int(name[len(fam):])
                return fam, n if fam == "Wm" else n - 1
        raise AssertionError(name)


_MODE_ALGEBRAS: dict = {}


def mode_algebra(k_max: int = DEFAULT_K_MAX, field=None) -> FreeAlgebra:
    field = field or symbolic_field()
    key = (k_max, id(field))
    alg = _MODE_ALGEBRAS.get(key)
    if alg is None or alg.field is not field:
        alg = _MODE_ALGEBRAS.setdefault(key, FreeAlgebra(ModeAlphabet(k_max), field))
    return alg


def mode_letter(alg: FreeAlgebra, family: str, k: int) -> NCPoly:
    return alg.monomial(alg.alphabet.letter(family, k))


# ---------------------------------------------------------------------------
# scalar coefficients of U^(-1-i)
# ---------------------------------------------------------------------------


def u_power_coeff(i: int, m: int, field=None):
    """Closed form for the ``u^(-2i-4m-2)`` coefficient of ``U(u)^(-1-i)`` about u = infinity."""
    if i < 0 or m < 0:
        raise DomainError("indices must be nonnegative")
    field = field or symbolic_field()
    q = field.q
    return field((-1) ** m * comb(m + i, i)) * (q + field.qinv) ** (i + 1) * q ** (-i - 2 * m - 1)


def _series_mul(a: list, b: list, n: int, zero) -> list:
    out = [zero] * (n + 1)
    for i, x in enumerate(a[: n + 1]):
        if not x:
            continue
        for j in range(0, n + 1 - i):
            y = b[j]
            if y:
                out[i + j] = out[i + j] + x * y
    return out


def _series_inverse(a: list, n: int, field) -> list:
    # a[0] must be invertible; recurrence b_n = -(sum_{k>=1} a_k b_{n-k}) / a_0
    inv0 = field.one / a[0]
    b = [inv0] + [field.zero] * n
    for k in range(1, n + 1):
        s = field.zero
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                s = s + a[j] * b[k - j]
        b[k] = -s * inv0
    return b


def _expansion_constants(at: str, field):
    q, qi = field.q, field.qinv
    if at == "infinity":
        # x = u^-2: U^-1 = (q+q^-1) q^-1 x / (1 + q^-2 x^2); u -> uq sends x -> q^-2 x
        return qi, qi * qi, qi * qi
    if at == "zero":
        # x = u^2: U^-1 = (q+q^-1) q x / (1 + q^2 x^2); u -> uq sends x -> q^2 x
        return q, q * q, q * q
    raise DomainError(f"expansion point must be 'infinity' or 'zero', got {at!r}")


def expand_U_power(i: int, shift: str = "none", N: int = 8, at: str = "infinity", field=None) -> dict[int, object]:
    """Coefficients ``{n: c_n}`` of ``U(u*s)^(-1-i) = sum c_n x^n`` for ``n <= N``.

    ``shift`` is ``"none"`` (s = 1) or ``"q"`` (s = q).  Computed by inverting
    ``1 + r x^2`` as a power series and taking ``i+1`` fold products.
    """
    if i < 0 or N < 0:
        raise DomainError("i and N must be nonnegative")
    if shift not in ("none", "q"):
        raise DomainError(f"shift must be 'none' or 'q', got {shift!r}")
    field = field or symbolic_field()
    lead, ratio, scale = _expansion_constants(at, field)
    denom = [field.one, field.zero, ratio]
    geom = _series_inverse(denom, N, field)
    base = [field.zero] + [c * (field.q + field.qinv) * lead for c in geom[:N]]
    power = [field.one] + [field.zero] * N
    for _ in range(i + 1):
        power = _series_mul(power, base, N, field.zero)
    out = {}
    for n, c in enumerate(power):
        if c:
            out[n] = c * scale**n if shift == "q" else c
    return out


# ---------------------------------------------------------------------------
# series with NCPoly coefficients
# ---------------------------------------------------------------------------


class ModeSeries:
    """``sum_n coeffs[n] x^n`` known exactly for ``val <= n <= order``.

    Exponents below ``val`` are zero; exponents above ``order`` are unknown.
    """

    def __init__(self, algebra: FreeAlgebra, coeffs: dict, order: int, val: int = 0, at: str = "infinity", shift: str = "none"):
        self.algebra = algebra
        self.coeffs = {n: c for n, c in coeffs.items() if c and val <= n <= order}
        self.order = order
        self.val = val
        self.at = at
        self.shift = shift

    def coefficient(self, n: int) -> NCPoly:
        if n > self.order:
            raise DomainError(f"x^{n} lies beyond the truncation order {self.order}")
        return self.coeffs.get(n, self.algebra.zero)

    def _combine(self, other, sign):
        order = min(self.order, other.order)
        val = min(self.val, other.val)
        out = dict(self.coeffs)
        for n, c in other.coeffs.items():
            out[n] = out[n] + c * sign if n in out else c * sign
        return ModeSeries(self.algebra, out, order, val, self.at, "mixed")

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def scale(self, c) -> "ModeSeries":
        return ModeSeries(self.algebra, {n: p * c for n, p in self.coeffs.items()}, self.order, self.val, self.at, self.shift)

    def shift_exponent(self, s: int) -> "ModeSeries":
        """Multiply by ``x^s``."""
        return ModeSeries(
            self.algebra, {n + s: p for n, p in self.coeffs.items()}, self.order + s, self.val + s, self.at, self.shift
        )

    def __mul__(self, other: "ModeSeries") -> "ModeSeries":
        # left factor's coefficients stay on the left
        val = self.val + other.val
        order = min(self.order + other.val, other.order + self.val)
        out: dict[int, NCPoly] = {}
        for n1, p1 in self.coeffs.items():
            for n2, p2 in other.coeffs.items():
                n = n1 + n2
                if n > order:
                    continue
                prod = p1 * p2
                out[n] = out[n] + prod if n in out else prod
        return ModeSeries(self.algebra, out, order, val, self.at, "mixed")


def current(family: str, N: int, shift: str = "none", at: str = "infinity", algebra: FreeAlgebra | None = None) -> ModeSeries:
    """``sum_k X_k U(u*s)^(-k-1)`` truncated at ``x^N`` for a mode family ``X``."""
    algebra = algebra or mode_algebra()
    field = algebra.field
    alpha = algebra.alphabet
    needed = N - 1
    if needed > alpha.k_max:
        raise ConfigurationError(f"expansion to order {N} needs mode letters up to k = {needed}; k_max is {alpha.k_max}")
    coeffs: dict[int, NCPoly] = {}
    for k in range(0, N):
        letter = mode_letter(algebra, family, k)
        for n, c in expand_U_power(k, shift, N, at, field).items():
            term = letter * c
            coeffs[n] = coeffs[n] + term if n in coeffs else term
    return ModeSeries(algebra, coeffs, N, 1, at, shift)


def delta_current(N: int, at: str = "infinity", algebra: FreeAlgebra | None = None) -> ModeSeries:
    """The generating function Delta(u) as a series in ``x`` valid up to ``x^N``."""
    if N < 1:
        raise DomainError("N must be at least 1")
    algebra = algebra or mode_algebra()
    field = algebra.field
    q, qi, rho = field.q, field.qinv, field.rho
    cur = {(f, s): current(f, N, s, at, algebra) for f in FAMILIES for s in ("none", "q")}
    Wp_u, Wp_uq = cur[("Wm", "none")], cur[("Wm", "q")]  # W_+(u) carries W_{-k}
    Wn_u, Wn_uq = cur[("Wp", "none")], cur[("Wp", "q")]  # W_-(u) carries W_{k+1}
    Gp_u, Gp_uq = cur[("G", "none")], cur[("G", "q")]
    Gn_u, Gn_uq = cur[("Gt", "none")], cur[("Gt", "q")]

    qq = q - qi
    term_w = (Wp_u * Wp_uq + Wn_u * Wn_uq).scale(-qq * (q * q + qi * qi))
    term_g = (Gp_u * Gn_uq + Gn_u * Gp_uq).scale(-qq / rho)
    mixed = Wp_u * Wn_uq + Wn_u * Wp_uq
    # (u^2 q^2 + u^-2 q^-2): at infinity u^2 = x^-1, at zero u^2 = x
    up, down = (-1, 1) if at == "infinity" else (1, -1)
    term_m = (mixed.shift_exponent(up).scale(q * q) + mixed.shift_exponent(down).scale(qi * qi)).scale(qq)
    singles = Gp_u + Gp_uq + Gn_u + Gn_uq
    total = term_w + term_g + term_m - singles
    total.order = min(total.order, N)
    return total


def delta_mode_coefficient(k: int, at: str = "infinity", algebra: FreeAlgebra | None = None) -> tuple[object, NCPoly]:
    """``(c, D)`` where the ``x^(k+1)`` coefficient of Delta(u) is ``c * D``.

    ``c`` is read off as the coefficient of the letter G_{k+1}, so ``D`` is
    normalized with G_{k+1} appearing with coefficient 1.
    """
    if k < 0:
        raise DomainError("k must be nonnegative")
    algebra = algebra or mode_algebra()
    coeff = delta_current(k + 1, at, algebra).coefficient(k + 1)
    c = coeff.coeff(algebra.alphabet.letter("G", k))
    if not c:
        raise DomainError(f"the G_{k + 1} coefficient of the x^{k + 1} term vanished; cannot normalize")
    return c, coeff * (algebra.field.one / c)


def delta_mode_oracle(k: int, at: str = "infinity", algebra: FreeAlgebra | None = None) -> NCPoly:
    """Delta_{k+1} over the mode alphabet, extracted from the series expansion."""
    return delta_mode_coefficient(k, at, algebra)[1]


_PARTNER = {"Wm": "Wp", "Wp": "Wm", "G": "Gt", "Gt": "G"}


def mode_swap(p: NCPoly) -> NCPoly:
    """Letter-wise involution W_{-k} <-> W_{k+1}, G_{k+1} <-> G~_{k+1}."""
    alpha = p.ring.alphabet
    if not isinstance(alpha, ModeAlphabet):
        raise UsageError("mode_swap is defined on mode alphabets only")
    table = {}
    for code in alpha.code_of.values():
        fam, k = alpha.decode(code)
        table[code] = alpha.letter(_PARTNER[fam], k)
    return NCPoly(p.ring, {"".join(table[ch] for ch in w): c for w, c in p.terms.items()})
