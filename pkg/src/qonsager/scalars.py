"""Exact coefficient fields.

Two interchangeable coefficient domains are provided:

* :class:`ScalarField` -- rational functions in ``q, r, d1..dK`` (``r`` is
  the scalar rho, ``dk`` the scalar delta_k) over the rationals.  Elements are
  :class:`Scalar` values stored as a coprime pair of integer polynomials.
* :class:`SpecializedField` -- the same constants evaluated at a
  :class:`SpecializationPoint`; elements are ``flint.fmpq`` rationals.

Both expose ``zero``, ``one``, ``q``, ``qinv``, ``rho``, ``delta(k)`` and
``__call__`` for coercion, so everything downstream is written once against
this small protocol.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import flint

from .errors import ConfigurationError, DomainError, EvaluationError, ValidationError

DEFAULT_N_DELTAS = 6
ROOT_OF_UNITY_BOUND = 64

_fmpz_mpoly = flint.fmpz_mpoly
_fmpq = flint.fmpq


def _term_key(exps):
    # degree-lexicographic with q as the least significant variable
    return (sum(exps), tuple(reversed(exps)))


class ScalarField:
    """The field Q(q, rho, delta_1..delta_K)."""

    mode = "symbolic"

    def __init__(self, n_deltas: int = DEFAULT_N_DELTAS):
        if n_deltas < 0:
            raise ConfigurationError("number of deltas must be nonnegative")
        self.n_deltas = n_deltas
        self.names = ("q", "r") + tuple(f"d{i}" for i in range(1, n_deltas + 1))
        self.ctx = flint.fmpz_mpoly_ctx.get(self.names, "deglex")
        gens = self.ctx.gens()
        self._poly_one = self.ctx.constant(1)
        self._poly_zero = self.ctx.constant(0)
        self._qpoly = gens[0]
        self.zero = Scalar._raw(self, self._poly_zero, self._poly_one)
        self.one = Scalar._raw(self, self._poly_one, self._poly_one)
        self.q = Scalar._raw(self, gens[0], self._poly_one)
        self.qinv = Scalar._raw(self, self._poly_one, gens[0])
        self.rho = Scalar._raw(self, gens[1], self._poly_one)
        self._deltas = tuple(Scalar._raw(self, g, self._poly_one) for g in gens[2:])

    def delta(self, k: int) -> "Scalar":
        """The indeterminate delta_k (1-based)."""
        if not 1 <= k <= self.n_deltas:
            raise ConfigurationError(
                f"delta_{k} requested but the field only carries {self.n_deltas} deltas; "
                f"rebuild it with n_deltas >= {k}"
            )
        return self._deltas[k - 1]

    def __call__(self, x) -> "Scalar":
        if isinstance(x, Scalar):
            if x.field is not self:
                raise ValidationError("scalar belongs to a different field")
            return x
        if isinstance(x, str):
            return parse_scalar(x, self)
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, int):
            return Scalar._raw(self, self.ctx.constant(x), self._poly_one)
        if isinstance(x, (Fraction, _fmpq)):
            num, den = int(x.numerator if isinstance(x, Fraction) else x.p), int(
                x.denominator if isinstance(x, Fraction) else x.q
            )
            return Scalar._raw(self, self.ctx.constant(num), self.ctx.constant(den))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def __repr__(self):
        return f"ScalarField(n_deltas={self.n_deltas})"


@lru_cache(maxsize=None)
def symbolic_field(n_deltas: int = DEFAULT_N_DELTAS) -> ScalarField:
    """Shared field instance per number of deltas."""
    return ScalarField(n_deltas)


class Scalar:
    """An element of :class:`ScalarField` in canonical form.

    ``num/den`` are coprime integer polynomials and ``den`` has a positive
    leading coefficient, so structural equality is value equality.
    """

    __slots__ = ("field", "num", "den")

    @classmethod
    def _raw(cls, fld, num, den):
        obj = object.__new__(cls)
        obj.field = fld
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def _make(cls, fld, num, den):
        if den.is_zero():
            raise ZeroDivisionError("scalar with zero denominator")
        if num.is_zero():
            return fld.zero
        if not den.is_one():
            g = num.gcd(den)
            if not g.is_one():
                num = num / g
                den = den / g
            if den.leading_coefficient() < 0:
                num = -num
                den = -den
        return cls._raw(fld, num, den)

    # -- coercion ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Scalar):
            if other.field is not self.field:
                raise ValidationError("scalars from different fields")
            return other
        if isinstance(other, (int, Fraction, _fmpq)):
            return self.field(other)
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.num:
            return o
        if not o.num:
            return self
        fld = self.field
        d1, d2 = self.den, o.den
        if d1 == d2:
            return Scalar._make(fld, self.num + o.num, d1)
        g = d1.gcd(d2)
        if g.is_one():
            return Scalar._raw(fld, self.num * d2 + o.num * d1, d1 * d2)._fix_zero()
        d1g, d2g = d1 / g, d2 / g
        t = self.num * d2g + o.num * d1g
        if t.is_zero():
            return fld.zero
        g2 = t.gcd(g)
        if not g2.is_one():
            t = t / g2
            return Scalar._raw(fld, t, d1g * (d2 / g2))._fix_sign()
        return Scalar._raw(fld, t, d1g * d2)._fix_sign()

    __radd__ = __add__

    def _fix_zero(self):
        if self.num.is_zero():
            return self.field.zero
        return self._fix_sign()

    def _fix_sign(self):
        if self.den.leading_coefficient() < 0:
            return Scalar._raw(self.field, -self.num, -self.den)
        return self

    def __neg__(self):
        return Scalar._raw(self.field, -self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        fld = self.field
        if not self.num or not o.num:
            return fld.zero
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d1.is_one() and d2.is_one():
            return Scalar._raw(fld, n1 * n2, d1)
        g1 = n1.gcd(d2)
        g2 = n2.gcd(d1)
        if not g1.is_one():
            n1, d2 = n1 / g1, d2 / g1
        if not g2.is_one():
            n2, d1 = n2 / g2, d1 / g2
        return Scalar._raw(fld, n1 * n2, d1 * d2)._fix_sign()

    __rmul__ = __mul__

    def inv(self) -> "Scalar":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero scalar")
        return Scalar._raw(self.field, self.den, self.num)._fix_sign()

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inv() ** (-n)
        return Scalar._raw(self.field, self.num**n, self.den**n)

    # -- comparison -------------------------------------------------------
    def __bool__(self):
        return not self.num.is_zero()

    def __eq__(self, other):
        o = self._coerce(other) if not isinstance(other, Scalar) else other
        if o is None:
            return NotImplemented
        if o.field is not self.field:
            return False
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((tuple(self.num.to_dict().items()), tuple(self.den.to_dict().items())))

    # -- inspection -------------------------------------------------------
    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        return Fraction(int(self.num.leading_coefficient()) if self.num else 0, int(self.den.leading_coefficient()))

    def free_symbols(self) -> set[str]:
        used = set()
        for poly in (self.num, self.den):
            for exps in poly.monoms():
                used.update(n for n, e in zip(self.field.names, exps) if e)
        return used

    def laurent_parts(self):
        """Canonical ``(numerator, denominator)`` term dictionaries.

        The numerator may carry negative powers of ``q``; the denominator has
        none and is not divisible by ``q``; it is monic with respect to the
        degree-lexicographic order (``q`` least significant).  Coefficients are
        :class:`fractions.Fraction`.
        """
        den = self.den.to_dict()
        shift = min(e[0] for e in den)
        den = {(e[0] - shift,) + tuple(e[1:]): int(c) for e, c in den.items()}
        num = {(e[0] - shift,) + tuple(e[1:]): int(c) for e, c in self.num.to_dict().items()}
        lc = den[max(den, key=_term_key)]
        return (
            {e: Fraction(c, lc) for e, c in num.items()},
            {e: Fraction(c, lc) for e, c in den.items()},
        )

    def to_str(self) -> str:
        """Canonical whitespace-free serialization."""
        if not self.num:
            return "0"
        num, den = self.laurent_parts()
        zero = (0,) * len(self.field.names)
        if den == {zero: Fraction(1)}:
            return _render_poly(num, self.field.names)
        return "(" + _render_poly(num, self.field.names) + ")/(" + _render_poly(den, self.field.names) + ")"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"Scalar({self.to_str()!r})"


def _render_poly(terms: dict, names: Sequence[str]) -> str:
    out = []
    for exps in sorted(terms, key=_term_key, reverse=True):
        c = terms[exps]
        factors = [n if e == 1 else f"{n}^{e}" for n, e in zip(names, exps) if e]
        if not factors:
            body = str(abs(c))
        elif abs(c) == 1:
            body = "*".join(factors)
        else:
            body = str(abs(c)) + "*" + "*".join(factors)
        sign = "-" if c < 0 else "+"
        out.append((sign, body))
    text = "".join(s + b for s, b in out)
    return text[1:] if text.startswith("+") else text


_TERM_RE = re.compile(r"([+-])?(\d+(?:/\d+)?)?((?:\*?[A-Za-z]\w*(?:\^-?\d+)?)*)")
_FACTOR_RE = re.compile(r"([A-Za-z]\w*)(?:\^(-?\d+))?")


def _parse_poly_terms(text: str, field: ScalarField) -> Scalar:
    if not text:
        raise ValidationError("empty polynomial")
    pos = 0
    total = field.zero
    index = {n: i for i, n in enumerate(field.names)}
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if m is None or m.end() == pos:
            raise ValidationError(f"cannot parse scalar near {text[pos:]!r}")
        sign, coeff, factors = m.groups()
        if pos > 0 and sign is None:
            raise ValidationError(f"missing operator near {text[pos:]!r}")
        if coeff is None and not factors:
            raise ValidationError(f"empty term near {text[pos:]!r}")
        c = Fraction(coeff) if coeff else Fraction(1)
        if sign == "-":
            c = -c
        term = field(c)
        factors = factors.lstrip("*") if coeff is None else factors
        if coeff is not None and factors and not factors.startswith("*"):
            raise ValidationError(f"expected '*' after coefficient in {m.group(0)!r}")
        for name, exp in _FACTOR_RE.findall(factors):
            if name not in index:
                raise ValidationError(f"unknown variable {name!r}")
            e = int(exp) if exp else 1
            if e < 0 and name != "q":
                raise ValidationError("negative exponents are only allowed for q")
            base = field.q if name == "q" else (field.rho if name == "r" else field.delta(int(name[1:])))
            term = term * base**e
        total = total + term
        pos = m.end()
    return total


def parse_scalar(text: str, field: ScalarField | None = None) -> Scalar:
    """Inverse of :meth:`Scalar.to_str`."""
    field = field or symbolic_field()
    text = text.replace(" ", "")
    if text.startswith("("):
        m = re.fullmatch(r"\(([^()]*)\)/\(([^()]*)\)", text)
        if m is None:
            raise ValidationError(f"malformed quotient {text!r}")
        return _parse_poly_terms(m.group(1), field) / _parse_poly_terms(m.group(2), field)
    return _parse_poly_terms(text, field)


# ---------------------------------------------------------------------------
# specialization
# ---------------------------------------------------------------------------


def _as_fraction(x) -> Fraction:
    if isinstance(x, _fmpq):
        return Fraction(int(x.p), int(x.q))
    return Fraction(x)


@dataclass(frozen=True)
class SpecializationPoint:
    """Rational values for q, rho and delta_1, delta_2, ..."""

    q: Fraction
    rho: Fraction
    deltas: tuple = field(default_factory=tuple)
    root_of_unity_bound: int = ROOT_OF_UNITY_BOUND

    def __post_init__(self):
        object.__setattr__(self, "q", _as_fraction(self.q))
        object.__setattr__(self, "rho", _as_fraction(self.rho))
        object.__setattr__(self, "deltas", tuple(_as_fraction(d) for d in self.deltas))
        if self.q in (0, 1, -1):
            raise ValidationError(f"q = {self.q} is not allowed (must avoid 0 and +-1)")
        if self.rho == 0:
            raise ValidationError("rho must be nonzero")
        power = Fraction(1)
        for n in range(1, self.root_of_unity_bound + 1):
            power *= self.q
            if power == 1:
                raise ValidationError(f"q = {self.q} is a root of unity (q^{n} = 1)")

    @classmethod
    def default(cls, n_deltas: int = DEFAULT_N_DELTAS) -> "SpecializationPoint":
        return cls(Fraction(5, 3), Fraction(2), tuple(Fraction(1, k) for k in range(1, n_deltas + 1)))

    def values(self, n_deltas: int, needed: int | None = None) -> list:
        """``[q, rho, delta_1..delta_n]``; deltas beyond ``needed`` may be absent and read as 0."""
        needed = n_deltas if needed is None else needed
        if len(self.deltas) < needed:
            raise ConfigurationError(f"point carries {len(self.deltas)} deltas, {needed} needed")
        deltas = list(self.deltas[:n_deltas]) + [Fraction(0)] * max(0, n_deltas - len(self.deltas))
        return [self.q, self.rho, *deltas]

    def to_json(self) -> dict:
        return {"q": str(self.q), "rho": str(self.rho), "deltas": [str(d) for d in self.deltas]}


def agreement_points(n_deltas: int = DEFAULT_N_DELTAS) -> list[SpecializationPoint]:
    """Three generic points used for symbolic/specialized cross-checks."""
    extra1 = [Fraction(2), Fraction(-1, 3), Fraction(5, 7), Fraction(3), Fraction(-7, 4), Fraction(11, 5)]
    extra2 = [Fraction(-1, 2), Fraction(3, 4), Fraction(-2), Fraction(1, 5), Fraction(9, 2), Fraction(-5, 3)]
    return [
        SpecializationPoint.default(n_deltas),
        SpecializationPoint(Fraction(7, 2), Fraction(-3, 5), tuple(extra1[:n_deltas])),
        SpecializationPoint(Fraction(-4, 3), Fraction(5, 7), tuple(extra2[:n_deltas])),
    ]


def _eval_poly(poly, values: Sequence[_fmpq]) -> _fmpq:
    total = _fmpq(0)
    for exps, c in poly.terms():
        term = _fmpq(int(c))
        for v, e in zip(values, exps):
            if e:
                term *= v**e
        total += term
    return total


def _specialize_fmpq(x: Scalar, values: Sequence[_fmpq]) -> _fmpq:
    den = _eval_poly(x.den, values)
    if den == 0:
        vanishing = [str(f) for f, _ in x.den.factor()[1] if _eval_poly(f, values) == 0]
        raise EvaluationError(f"denominator of {x} vanishes at the point; offending factor(s): {', '.join(vanishing)}")
    return _eval_poly(x.num, values) / den


def _deltas_used(x: Scalar) -> int:
    used = 0
    for poly in (x.num, x.den):
        for i, d in enumerate(poly.degrees()[2:], start=1):
            if d:
                used = max(used, i)
    return used


def specialize(x: Scalar, p: SpecializationPoint) -> Fraction:
    """Exact value of ``x`` at ``p``."""
    values = [_fmpq(v.numerator, v.denominator) for v in p.values(x.field.n_deltas, _deltas_used(x))]
    return _as_fraction(_specialize_fmpq(x, values))


class SpecializedField:
    """The coefficient constants evaluated at a point; elements are ``fmpq``."""

    mode = "specialized"

    def __init__(self, point: SpecializationPoint):
        self.point = point
        self.n_deltas = len(point.deltas)
        self.zero = _fmpq(0)
        self.one = _fmpq(1)
        self.q = self(point.q)
        self.qinv = 1 / self.q
        self.rho = self(point.rho)
        self._deltas = tuple(self(d) for d in point.deltas)

    def delta(self, k: int) -> _fmpq:
        if not 1 <= k <= self.n_deltas:
            raise ConfigurationError(f"delta_{k} requested but the point carries {self.n_deltas} deltas")
        return self._deltas[k - 1]

    def __call__(self, x) -> _fmpq:
        if isinstance(x, _fmpq):
            return x
        if isinstance(x, Fraction):
            return _fmpq(x.numerator, x.denominator)
        if isinstance(x, int):
            return _fmpq(x)
        if isinstance(x, Scalar):
            return self.from_symbolic(x)
        if isinstance(x, str):
            return self.from_symbolic(parse_scalar(x, symbolic_field(max(self.n_deltas, 1))))
        raise TypeError(f"cannot coerce {type(x).__name__} into {self!r}")

    def from_symbolic(self, x: Scalar) -> _fmpq:
        values = [self(v) for v in self.point.values(x.field.n_deltas, _deltas_used(x))]
        return _specialize_fmpq(x, values)

    def __repr__(self):
        return f"SpecializedField(q={self.point.q}, rho={self.point.rho}, deltas={[str(d) for d in self.point.deltas]})"


def format_coeff(c) -> str:
    """Serialize a coefficient of either field in the scalar grammar."""
    if isinstance(c, Scalar):
        return c.to_str()
    return str(_as_fraction(c))


# ---------------------------------------------------------------------------
# named operations
# ---------------------------------------------------------------------------


def qnum(n: int, field=None):
    """The q-number ``[n]_q = (q^n - q^-n)/(q - q^-1)`` as a Laurent polynomial."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"[n]_q needs a positive integer, got {n!r}")
    field = field or symbolic_field()
    total = field.zero
    for j in range(n):
        total = total + field.q ** (n - 1 - 2 * j)
    return total


def field_arithmetic(x, y, op: str):
    """Dispatch one of ``add, sub, mul, div, neg, inv``; ``y`` is ignored for unary ops."""
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    if op == "neg":
        return -x
    if op == "inv":
        if isinstance(x, Scalar):
            return x.inv()
        return 1 / x
    raise ValueError(f"unknown operation {op!r}")


def field_for(point: SpecializationPoint | None, n_deltas: int = DEFAULT_N_DELTAS):
    """Symbolic field when ``point`` is None, otherwise the specialized one."""
    if point is None:
        return symbolic_field(n_deltas)
    return SpecializedField(point)


def as_fraction(x) -> Fraction:
    """Convert a specialized coefficient or constant Scalar to ``Fraction``."""
    if isinstance(x, Scalar):
        return x.to_fraction()
    return _as_fraction(x)


def iter_points(points: Iterable[SpecializationPoint]):
    for p in points:
        yield p, SpecializedField(p)
