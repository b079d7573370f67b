"""Zig-zag words, WG monomials and the two counting products."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import DomainError, ValidationError

# ---------------------------------------------------------------------------
# zig-zag indices
# ---------------------------------------------------------------------------


def is_irreducible(parts: tuple[int, ...]) -> bool:
    """Shape test: strictly increasing up to some peak, non-increasing afterwards."""
    if not parts or parts[0] < 0 or any(p < 1 for p in parts[1:]):
        return False
    i = 0
    while i + 1 < len(parts) and parts[i] < parts[i + 1]:
        i += 1
    return all(parts[j] >= parts[j + 1] for j in range(i, len(parts) - 1))


@dataclass(frozen=True, order=True)
class ZigzagIndex:
    """``(l0, l1, ..., lr)`` standing for ``A^l0 A*^l1 A^l2 ...``."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not is_irreducible(self.parts):
            raise ValidationError(f"{self.parts} is not an irreducible zig-zag index")

    @property
    def length(self) -> int:
        return sum(self.parts)

    @property
    def word(self) -> str:
        return "".join(("a" if i % 2 == 0 else "b") * n for i, n in enumerate(self.parts))

    def render(self) -> str:
        if self.length == 0:
            return "1"
        out = []
        for i, n in enumerate(self.parts):
            if n:
                out.append(("A" if i % 2 == 0 else "A*") + (f"^{n}" if n > 1 else ""))
        return "".join(out)

    def to_json(self) -> dict:
        return {"parts": list(self.parts), "word": self.render()}

    @classmethod
    def from_word(cls, word: str) -> "ZigzagIndex":
        runs = [len(m.group(0)) for m in re.finditer(r"a+|b+", word)]
        if word.startswith("b"):
            runs = [0] + runs
        return cls(tuple(runs) if runs else (0,))


def _compositions(n: int):
    """Tuples of positive integers summing to ``n``."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first, *rest)


@lru_cache(maxsize=None)
def zigzag_enumerate(n: int) -> tuple[ZigzagIndex, ...]:
    """All irreducible indices of length ``n``, sorted lexicographically by parts."""
    if n < 0:
        raise DomainError("length must be nonnegative")
    if n == 0:
        return (ZigzagIndex((0,)),)
    found = []
    for l0 in range(n + 1):
        for rest in _compositions(n - l0):
            parts = (l0, *rest)
            if is_irreducible(parts):
                found.append(ZigzagIndex(parts))
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# WG monomials
# ---------------------------------------------------------------------------

Block = tuple[tuple[int, int], ...]


def _block_ok(block: Block) -> bool:
    return all(e >= 1 and k >= 0 for k, e in block) and all(a[0] < b[0] for a, b in zip(block, block[1:]))


@dataclass(frozen=True, order=True)
class WGIndex:
    """Exponent data for ``W_{-k1}^a1 ... G_{p1+1}^b1 ... W_{lM+1}^cM ... W_{l1+1}^c1``.

    Each block lists ``(index, exponent)`` pairs with strictly increasing index;
    the last block is written in reverse in the monomial.
    """

    w_minus: Block = ()
    g: Block = ()
    w_plus: Block = ()

    def __post_init__(self):
        for name in ("w_minus", "g", "w_plus"):
            block = tuple(tuple(x) for x in getattr(self, name))
            object.__setattr__(self, name, block)
            if not _block_ok(block):
                raise ValidationError(f"{name} block {block} must have increasing indices and positive exponents")

    @property
    def weight(self) -> int:
        return (
            sum(e * (2 * k + 1) for k, e in self.w_minus)
            + sum(e * (2 * p + 2) for p, e in self.g)
            + sum(e * (2 * l + 1) for l, e in self.w_plus)
        )

    def factors(self) -> list[tuple[str, int, int]]:
        """``(family, k, exponent)`` in the order the monomial is written."""
        return (
            [("Wm", k, e) for k, e in self.w_minus]
            + [("G", p, e) for p, e in self.g]
            + [("Wp", l, e) for l, e in reversed(self.w_plus)]
        )

    def render(self) -> str:
        if not self.factors():
            return "1"
        parts = []
        for fam, k, e in self.factors():
            name = {"Wm": f"W-{k}" if k else "W0", "G": f"G{k + 1}", "Wp": f"W{k + 1}"}[fam]
            parts.append(name + (f"^{e}" if e > 1 else ""))
        return " ".join(parts)

    def to_json(self) -> dict:
        return {"monomial": self.render(), "weight": self.weight}

    @classmethod
    def parse(cls, text: str) -> "WGIndex":
        """Inverse of :meth:`render`; rejects products outside the block grammar."""
        text = text.strip()
        if text == "1":
            return cls()
        blocks: dict[str, list] = {"Wm": [], "G": [], "Wp": []}
        stage = 0
        for tok in text.split():
            m = re.fullmatch(r"(W|G)(-?)(\d+)(?:\^(\d+))?", tok)
            if m is None:
                raise ValidationError(f"cannot parse factor {tok!r}")
            kind, minus, num, exp = m.group(1), m.group(2), int(m.group(3)), int(m.group(4) or 1)
            if kind == "G":
                if num < 1:
                    raise ValidationError("G subscripts start at 1")
                fam, k = "G", num - 1
            elif minus or num == 0:
                fam, k = "Wm", num
            else:
                fam, k = "Wp", num - 1
            order = {"Wm": 0, "G": 1, "Wp": 2}[fam]
            if order < stage:
                raise ValidationError(f"{text!r} is not in W_-, G, W_+ block order")
            stage = order
            blocks[fam].append((k, exp))
        return cls(tuple(blocks["Wm"]), tuple(blocks["G"]), tuple(reversed(blocks["Wp"])))


def _multisets(total: int, sizes: list[tuple[int, int]]):
    """Ways to write ``total`` as sum of ``exp * size`` over ``(index, size)`` with exps >= 0."""
    if not sizes:
        if total == 0:
            yield ()
        return
    (idx, size), rest = sizes[0], sizes[1:]
    for e in range(total // size + 1):
        for tail in _multisets(total - e * size, rest):
            yield (((idx, e),) if e else ()) + tail


@lru_cache(maxsize=None)
def wg_enumerate(w: int) -> tuple[WGIndex, ...]:
    """All WG indices of weight ``w``, sorted by their block data."""
    if w < 0:
        raise DomainError("weight must be nonnegative")
    odd = [(k, 2 * k + 1) for k in range((w + 1) // 2)]
    even = [(p, 2 * p + 2) for p in range(w // 2)]
    found = []
    for wm_w in range(w + 1):
        for g_w in range(w - wm_w + 1):
            wp_w = w - wm_w - g_w
            for wm, g, wp in product(_multisets(wm_w, odd), _multisets(g_w, even), _multisets(wp_w, odd)):
                found.append(WGIndex(wm, g, wp))
    return tuple(sorted(found))


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------


def _mul_binomial(series: list[int], m: int, sign: int) -> list[int]:
    """Multiply by ``1 + sign * v^m``."""
    out = list(series)
    for n in range(len(series) - 1, m - 1, -1):
        out[n] += sign * series[n - m]
    return out


def _div_one_minus(series: list[int], m: int) -> list[int]:
    """Divide by ``1 - v^m``."""
    out = list(series)
    for n in range(m, len(out)):
        out[n] += out[n - m]
    return out


def gf_coefficients(which: str, N: int) -> list[int]:
    """Coefficients of ``v^0..v^N`` of the named infinite product.

    ``overpartition`` is prod (1+v^m)/(1-v^m); ``verma`` is
    prod (1-v^{2m})^-1 (1-v^{2m-1})^-2.
    """
    if N < 0:
        raise DomainError("order must be nonnegative")
    s = [1] + [0] * N
    if which == "overpartition":
        for m in range(1, N + 1):
            s = _div_one_minus(_mul_binomial(s, m, 1), m)
    elif which == "verma":
        for m in range(1, N + 1):
            if m % 2 == 0:
                s = _div_one_minus(s, m)
            else:
                s = _div_one_minus(_div_one_minus(s, m), m)
    else:
        raise DomainError(f"unknown product {which!r}; expected 'overpartition' or 'verma'")
    return s
