"""Sparse polynomials in the free associative algebra.

A word is stored as a ``str`` whose characters are internal letter codes, so
concatenation, hashing and subword search are the builtin string
operations.  For the core alphabet ``{a, b}`` the codes are the letter names
themselves.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping

from .errors import UsageError, ValidationError
from .scalars import format_coeff, parse_scalar, symbolic_field


class Alphabet:
    """An ordered set of letter names; the order drives word comparison."""

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise ValidationError("alphabet must be nonempty")
        if len(set(names)) != len(names):
            raise ValidationError(f"repeated letters in {names}")
        self.names = names
        if all(len(n) == 1 for n in names) and list(names) == sorted(names):
            self.codes = names
        else:
            self.codes = tuple(chr(0x100 + i) for i in range(len(names)))
        self.code_of = dict(zip(names, self.codes))
        self.name_of = dict(zip(self.codes, names))
        # longest names first so greedy tokenization prefers e.g. "G12" over "G1"
        self._token_re = re.compile("|".join(re.escape(n) for n in sorted(names, key=len, reverse=True)))

    def __len__(self):
        return len(self.names)

    def __eq__(self, other):
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self):
        return hash(self.names)

    def __repr__(self):
        return f"Alphabet({list(self.names)})"

    def word(self, *letters: str) -> str:
        """Internal word from letter names."""
        return "".join(self.code_of[n] for n in letters)

    def render(self, word: str) -> str:
        if self.codes is self.names:
            return word
        return "".join(self.name_of[c] for c in word)

    def letters(self, word: str) -> list[str]:
        return [self.name_of[c] for c in word]

    def parse(self, text: str) -> str:
        """Inverse of :meth:`render`."""
        out = []
        pos = 0
        while pos < len(text):
            m = self._token_re.match(text, pos)
            if m is None:
                raise ValidationError(f"cannot tokenize {text!r} over {self}")
            out.append(self.code_of[m.group(0)])
            pos = m.end()
        return "".join(out)


CORE = Alphabet(("a", "b"))


def word_key(word: str):
    """Canonical order: by length, then lexicographically by letter order."""
    return (len(word), word)


class FreeAlgebra:
    """The free algebra over ``alphabet`` with coefficients in ``field``."""

    def __init__(self, alphabet: Alphabet, field):
        self.alphabet = alphabet
        self.field = field

    def __eq__(self, other):
        return isinstance(other, FreeAlgebra) and self.alphabet == other.alphabet and self.field is other.field

    def __hash__(self):
        return hash((self.alphabet, id(self.field)))

    def __repr__(self):
        return f"FreeAlgebra({self.alphabet!r}, {self.field!r})"

    @property
    def zero(self) -> "NCPoly":
        return NCPoly(self, {})

    @property
    def one(self) -> "NCPoly":
        return NCPoly(self, {"": self.field.one})

    def scalar(self, c) -> "NCPoly":
        c = self.field(c)
        return NCPoly(self, {"": c} if c else {})

    def gen(self, name: str) -> "NCPoly":
        return NCPoly(self, {self.alphabet.code_of[name]: self.field.one})

    def gens(self) -> list["NCPoly"]:
        return [self.gen(n) for n in self.alphabet.names]

    def monomial(self, word: str, coeff=None) -> "NCPoly":
        c = self.field.one if coeff is None else self.field(coeff)
        return NCPoly(self, {word: c} if c else {})

    def from_words(self, terms: Mapping[str, object]) -> "NCPoly":
        """Build from ``{rendered word: coefficient}``."""
        out = {}
        for w, c in terms.items():
            c = self.field(c)
            if c:
                code = self.alphabet.parse(w)
                out[code] = out.get(code, self.field.zero) + c
        return NCPoly(self, {w: c for w, c in out.items() if c})

    def from_json(self, data: dict) -> "NCPoly":
        if list(data.get("alphabet", [])) != list(self.alphabet.names):
            raise UsageError(f"JSON alphabet {data.get('alphabet')} does not match {list(self.alphabet.names)}")
        terms = {}
        for t in data["terms"]:
            c = _parse_coeff(t["coeff"], self.field)
            code = self.alphabet.parse(t["word"])
            terms[code] = terms.get(code, self.field.zero) + c
        return NCPoly(self, {w: c for w, c in terms.items() if c})

    def map_coefficients(self, p: "NCPoly") -> "NCPoly":
        """Image of ``p`` (same alphabet, any field) in this algebra's field."""
        if p.ring.alphabet != self.alphabet:
            raise UsageError("alphabet mismatch")
        out = {}
        for w, c in p.terms.items():
            c = self.field(c)
            if c:
                out[w] = c
        return NCPoly(self, out)


def _parse_coeff(text: str, field):
    if getattr(field, "mode", "") == "symbolic":
        return parse_scalar(text, field)
    return field(parse_scalar(text, symbolic_field()))


class NCPoly:
    """Finite mapping word -> nonzero coefficient; immutable by convention."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: FreeAlgebra, terms: dict):
        self.ring = ring
        self.terms = terms

    # -- basic protocol ---------------------------------------------------
    def _check(self, other: "NCPoly"):
        if other.ring.alphabet != self.ring.alphabet:
            raise UsageError(f"alphabet mismatch: {self.ring.alphabet} vs {other.ring.alphabet}")
        if other.ring.field is not self.ring.field:
            raise UsageError("coefficient field mismatch")

    def _lift(self, other):
        if isinstance(other, NCPoly):
            self._check(other)
            return other
        return self.ring.scalar(other)

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, NCPoly):
            if other.ring.alphabet != self.ring.alphabet or other.ring.field is not self.ring.field:
                return False
            return self.terms == other.terms
        try:
            return self == self.ring.scalar(other)
        except TypeError:
            return NotImplemented

    __hash__ = None

    def __len__(self):
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[str, object]]:
        for w in sorted(self.terms, key=word_key):
            yield w, self.terms[w]

    def coeff(self, word: str):
        return self.terms.get(word, self.ring.field.zero)

    def coeff_of(self, *letters: str):
        return self.coeff(self.ring.alphabet.word(*letters))

    def degree(self) -> float | int:
        """Maximum word length; ``-inf`` for the zero polynomial."""
        if not self.terms:
            return float("-inf")
        return max(len(w) for w in self.terms)

    def words(self) -> list[str]:
        return sorted(self.terms, key=word_key)

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        terms = dict(self.terms)
        for w, c in o.terms.items():
            s = terms.get(w)
            if s is None:
                terms[w] = c
            else:
                s = s + c
                if s:
                    terms[w] = s
                else:
                    del terms[w]
        return NCPoly(self.ring, terms)

    __radd__ = __add__

    def __neg__(self):
        return NCPoly(self.ring, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) + (-self)

    def scale(self, c) -> "NCPoly":
        c = self.ring.field(c) if not isinstance(c, type(self.ring.field.one)) else c
        if not c:
            return self.ring.zero
        return NCPoly(self.ring, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, NCPoly):
            try:
                return self.scale(other)
            except TypeError:
                return NotImplemented
        self._check(other)
        zero = self.ring.field.zero
        terms: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                terms[w] = terms.get(w, zero) + c1 * c2
        return NCPoly(self.ring, {w: c for w, c in terms.items() if c})

    def __rmul__(self, other):
        try:
            return self.scale(other)
        except TypeError:
            return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, NCPoly):
            return NotImplemented
        return self.scale(self.ring.field.one / self.ring.field(other))

    def __pow__(self, n: int):
        out = self.ring.one
        for _ in range(n):
            out = out * self
        return out

    # -- views ------------------------------------------------------------
    def graded_component(self, d: int) -> "NCPoly":
        return NCPoly(self.ring, {w: c for w, c in self.terms.items() if len(w) == d})

    def map_words(self, fn) -> "NCPoly":
        """Apply a length-preserving word map (must be injective)."""
        return NCPoly(self.ring, {fn(w): c for w, c in self.terms.items()})

    def to_json(self) -> dict:
        alpha = self.ring.alphabet
        return {
            "alphabet": list(alpha.names),
            "terms": [{"word": alpha.render(w), "coeff": format_coeff(c)} for w, c in self],
        }

    def __str__(self):
        if not self.terms:
            return "0"
        alpha = self.ring.alphabet
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda t: word_key(t[0]), reverse=True):
            cs = format_coeff(c)
            word = "*".join(alpha.letters(w)) if alpha.codes is not alpha.names else w
            if not w:
                parts.append(cs)
            elif cs == "1":
                parts.append(word)
            elif cs == "-1":
                parts.append("-" + word)
            else:
                parts.append(f"({cs})*{word}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"NCPoly({self})"


# ---------------------------------------------------------------------------
# named operations
# ---------------------------------------------------------------------------


def multiply(p: NCPoly, r: NCPoly) -> NCPoly:
    return p * r


def commutator(p: NCPoly, r: NCPoly) -> NCPoly:
    """``p r - r p``."""
    return p * r - r * p


def q_commutator(p: NCPoly, r: NCPoly, q=None) -> NCPoly:
    """``[p, r]_q = q p r - q^-1 r p``; pass ``q`` to use another parameter (e.g. ``q^-1``)."""
    field = p.ring.field
    if q is None:
        q = field.q
    return (p * r) * q - (r * p) * (field.one / q)


_SWAP = str.maketrans("ab", "ba")


def omega_swap(p: NCPoly) -> NCPoly:
    """The automorphism exchanging the two core letters position-wise."""
    if p.ring.alphabet != CORE:
        raise UsageError("omega_swap is defined on the core alphabet {a, b} only")
    return NCPoly(p.ring, {w.translate(_SWAP): c for w, c in p.terms.items()})


def graded_component(p: NCPoly, d: int) -> NCPoly:
    return p.graded_component(d)


def core_algebra(field=None) -> FreeAlgebra:
    return FreeAlgebra(CORE, field or symbolic_field())


def same_poly_up_to_field(p: NCPoly, r: NCPoly) -> bool:
    """Equality of supports and coefficients after coercing ``p`` into ``r``'s field."""
    return r.ring.map_coefficients(p) == r
