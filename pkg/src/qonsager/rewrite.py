"""Reduction modulo the two q-Dolan-Grady relations.

Words are ordered degree-lexicographically with ``b > a``, which makes
``baaa`` and ``bbba`` the leading words of the relations.  :func:`complete`
runs overlap completion up to a degree bound and returns a
:class:`RewriteSystem` whose normal forms are unique for every polynomial of
degree at most that bound.
"""

from __future__ import annotations

import hashlib
import heapq
import json
from typing import Callable

from .errors import DegreeBoundError, DomainError, ValidationError
from .ncpoly import CORE, FreeAlgebra, NCPoly, core_algebra, omega_swap, q_commutator, word_key
from .scalars import SpecializedField, format_coeff, symbolic_field

ORDER_NAME = "deglex, b > a"
DEFAULT_DEGREE = 8


def qdg_relations(algebra: FreeAlgebra | None = None) -> tuple[NCPoly, NCPoly]:
    """``[a,[a,[a,b]_q]_{q^-1}] - rho [a,b]`` and its image under the letter swap."""
    alg = algebra or core_algebra()
    F = alg.field
    a, b = alg.gens()
    middle = q_commutator(a, q_commutator(a, b), F.qinv)
    nested = a * middle - middle * a
    rel1 = nested - (a * b - b * a) * F.rho
    return rel1, omega_swap(rel1)


# ---------------------------------------------------------------------------
# reduction on raw {word: coeff} dicts
# ---------------------------------------------------------------------------


class _Neg:
    """Heap wrapper turning ``heapq`` into a max-heap on the word order."""

    __slots__ = ("w",)

    def __init__(self, w):
        self.w = w

    def __lt__(self, other):
        return word_key(self.w) > word_key(other.w)


def _find_redex(word: str, rules: dict, lengths: tuple) -> tuple[int, str] | None:
    # leftmost occurrence; among leads starting there, the shortest
    n = len(word)
    for i in range(n):
        for ln in lengths:
            if i + ln > n:
                break
            s = word[i : i + ln]
            if s in rules:
                return i, s
    return None


def _reduce_dict(poly: dict, rules: dict, lengths: tuple, zero) -> dict:
    """Full normal form of ``poly`` under ``rules``, rewriting the largest word first."""
    terms = dict(poly)
    heap = [_Neg(w) for w in terms]
    heapq.heapify(heap)
    out = {}
    while heap:
        w = heapq.heappop(heap).w
        c = terms.pop(w, None)
        if c is None or not c:
            continue
        hit = _find_redex(w, rules, lengths)
        if hit is None:
            out[w] = c
            continue
        i, lead = hit
        u, v = w[:i], w[i + len(lead) :]
        for t, tc in rules[lead].items():
            nw = u + t + v
            prev = terms.get(nw)
            if prev is None:
                terms[nw] = c * tc
                heapq.heappush(heap, _Neg(nw))
            else:
                terms[nw] = prev + c * tc
    return out


def _monic(poly: dict) -> tuple[str, dict]:
    lead = max(poly, key=word_key)
    inv = 1 / poly[lead]
    return lead, {w: -c * inv for w, c in poly.items() if w != lead}


# ---------------------------------------------------------------------------
# the rewrite system
# ---------------------------------------------------------------------------


class RewriteSystem:
    """Monic rules ``lead -> tail`` complete for all overlaps up to ``degree_bound``."""

    def __init__(self, algebra: FreeAlgebra, rules: dict[str, dict], degree_bound: int, status: dict[int, str] | None = None):
        if algebra.alphabet != CORE:
            raise DomainError("rewrite systems are defined over the core alphabet {a, b}")
        self.algebra = algebra
        self.field = algebra.field
        self.rules = dict(sorted(rules.items(), key=lambda kv: word_key(kv[0])))
        self.degree_bound = degree_bound
        self.status = status or {d: "complete" for d in range(degree_bound + 1)}
        self._lengths = tuple(sorted({len(w) for w in self.rules}))
        self._nf_cache: dict[str, dict] = {}

    def __repr__(self):
        return f"RewriteSystem({len(self.rules)} rules, D={self.degree_bound})"

    # -- reduction --------------------------------------------------------
    def find_redex(self, word: str) -> tuple[int, str] | None:
        return _find_redex(word, self.rules, self._lengths)

    def is_normal(self, word: str) -> bool:
        return self.find_redex(word) is None

    def _word_nf(self, word: str) -> dict:
        cache = self._nf_cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        one, zero = self.field.one, self.field.zero
        stack = [word]
        while stack:
            w = stack[-1]
            if w in cache:
                stack.pop()
                continue
            redex = self.find_redex(w)
            if redex is None:
                cache[w] = {w: one}
                stack.pop()
                continue
            i, lead = redex
            u, v = w[:i], w[i + len(lead) :]
            images = [(u + t + v, c) for t, c in self.rules[lead].items()]
            missing = [x for x, _ in images if x not in cache]
            if missing:
                stack.extend(missing)
                continue
            acc: dict = {}
            for x, c in images:
                for y, d in cache[x].items():
                    acc[y] = acc.get(y, zero) + c * d
            cache[w] = {y: d for y, d in acc.items() if d}
            stack.pop()
        return cache[word]

    def normal_form(self, p: NCPoly) -> NCPoly:
        """The irreducible representative of ``p`` modulo the ideal."""
        if p.ring.alphabet != CORE:
            raise DomainError("normal_form expects a polynomial over {a, b}")
        if p.ring.field is not self.field:
            p = self.algebra.map_coefficients(p)
        if p.degree() > self.degree_bound:
            raise DegreeBoundError(
                f"polynomial of degree {p.degree()} exceeds the completion bound {self.degree_bound}; "
                f"recomplete with complete({int(p.degree())})"
            )
        zero = self.field.zero
        acc: dict = {}
        for w, c in p.terms.items():
            for y, d in self._word_nf(w).items():
                acc[y] = acc.get(y, zero) + c * d
        return NCPoly(self.algebra, {y: d for y, d in acc.items() if d})

    def reduces_to_zero(self, p: NCPoly) -> bool:
        return not self.normal_form(p)

    # -- normal words -----------------------------------------------------
    def normal_words(self, d: int) -> list[str]:
        """All degree-``d`` words avoiding every leading word, in increasing order."""
        if d < 0:
            raise DomainError("degree must be nonnegative")
        if d > self.degree_bound:
            raise DegreeBoundError(f"degree {d} exceeds the completion bound {self.degree_bound}")
        level = [""]
        for _ in range(d):
            nxt = []
            for w in level:
                for ch in "ab":
                    x = w + ch
                    # only suffixes can newly contain a lead, since w is normal
                    if not any(x[-ln:] in self.rules for ln in self._lengths if ln <= len(x)):
                        nxt.append(x)
            level = nxt
        return sorted(level, key=word_key)

    def graded_dim(self, d: int) -> int:
        return len(self.normal_words(d))

    # -- serialization ----------------------------------------------------
    def content_hash(self) -> str:
        return system_hash(self.degree_bound, self.field)

    def to_json(self) -> dict:
        return {
            "order": ORDER_NAME,
            "degree_bound": self.degree_bound,
            "field": field_descriptor(self.field),
            "hash": self.content_hash(),
            "status": {str(d): s for d, s in sorted(self.status.items())},
            "rules": [
                {"lead": lead, "tail": NCPoly(self.algebra, tail).to_json()}
                for lead, tail in self.rules.items()
            ],
        }

    @classmethod
    def from_json(cls, data: dict, field=None) -> "RewriteSystem":
        field = field or symbolic_field()
        alg = core_algebra(field)
        expected = system_hash(data.get("degree_bound", -1), field)
        if data.get("hash") != expected:
            raise ValidationError("cached rewrite system does not match the requested relations, order, bound or field")
        rules = {r["lead"]: alg.from_json(r["tail"]).terms for r in data["rules"]}
        status = {int(d): s for d, s in data.get("status", {}).items()}
        return cls(alg, rules, data["degree_bound"], status)


def field_descriptor(field) -> dict:
    if isinstance(field, SpecializedField):
        return {"mode": "specialized", "point": field.point.to_json()}
    return {"mode": "symbolic", "n_deltas": field.n_deltas}


def system_hash(D: int, field) -> str:
    rels = qdg_relations(core_algebra(symbolic_field()))
    payload = {
        "relations": [r.to_json() for r in rels],
        "order": ORDER_NAME,
        "degree_bound": D,
        "field": field_descriptor(field),
    }
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


# ---------------------------------------------------------------------------
# completion
# ---------------------------------------------------------------------------


def _overlaps(l1: str, l2: str, D: int):
    """``(k, word)`` for every proper overlap where a suffix of ``l1`` is a prefix of ``l2``."""
    for k in range(1, min(len(l1), len(l2))):
        if l1[-k:] == l2[:k]:
            w = l1 + l2[k:]
            if len(w) <= D:
                yield k, w


def complete(D: int = DEFAULT_DEGREE, field=None, progress: Callable[[str], None] | None = None) -> RewriteSystem:
    """Overlap completion of the relations, truncated at overlap degree ``D``."""
    if D < 4:
        raise DomainError("the relations have degree 4; use D >= 4")
    field = field or symbolic_field()
    alg = core_algebra(field)
    zero = field.zero
    rules: dict[str, dict] = {}
    ids: dict[str, int] = {}
    counter = 0
    pairs: list = []
    pending = [dict(r.terms) for r in qdg_relations(alg)]

    def lengths():
        return tuple(sorted({len(w) for w in rules}))

    def add(poly: dict):
        nonlocal counter
        poly = _reduce_dict(poly, rules, lengths(), zero)
        if not poly:
            return
        lead, tail = _monic(poly)
        if len(lead) > D:
            return
        for other in [l for l in rules if lead in l]:
            # the older rule is now reducible; send it back through reduction
            back = {w: -c for w, c in rules.pop(other).items()}
            back[other] = field.one
            del ids[other]
            pending.append(back)
        counter += 1
        rules[lead] = tail
        ids[lead] = counter
        for other in list(rules):
            for l1, l2 in ((lead, other), (other, lead)) if other != lead else ((lead, lead),):
                for k, w in _overlaps(l1, l2, D):
                    heapq.heappush(pairs, (len(w), w, k, l1, l2, ids[l1], ids[l2]))

    while True:
        while pending:
            pending.sort(key=lambda p: word_key(max(p, key=word_key)) if p else (0, ""), reverse=True)
            add(pending.pop())
        if not pairs:
            break
        deg, w, k, l1, l2, i1, i2 = heapq.heappop(pairs)
        if ids.get(l1) != i1 or ids.get(l2) != i2:
            continue
        # w = l1 + l2[k:] = l1[:-k] + l2
        right, left = l2[k:], l1[: len(l1) - k]
        s: dict = {}
        for t, c in rules[l1].items():
            s[t + right] = s.get(t + right, zero) + c
        for t, c in rules[l2].items():
            s[left + t] = s.get(left + t, zero) - c
        s = {x: c for x, c in s.items() if c}
        if s:
            if progress:
                progress(f"overlap {w} (degree {deg}); {len(rules)} rules")
            pending.append(s)

    # inter-reduce the tails
    final = {}
    lens = lengths()
    for lead in sorted(rules, key=word_key):
        others = {l: t for l, t in rules.items()}
        final[lead] = _reduce_dict(rules[lead], others, lens, zero)
    return RewriteSystem(alg, final, D)


_SYSTEMS: dict = {}


def cached_system(D: int = DEFAULT_DEGREE, field=None, progress=None) -> RewriteSystem:
    """Process-wide memo of :func:`complete`; a system of larger bound serves smaller requests."""
    field = field or symbolic_field()
    for (fid, d), rs in _SYSTEMS.items():
        if fid == id(field) and rs.field is field and d >= D:
            return rs
    rs = complete(D, field, progress)
    _SYSTEMS[(id(field), D)] = rs
    return rs


def normal_form(p: NCPoly, rs: RewriteSystem) -> NCPoly:
    return rs.normal_form(p)


def normal_words(d: int, rs: RewriteSystem) -> list[str]:
    return rs.normal_words(d)


def graded_dim(d: int, rs: RewriteSystem) -> int:
    return rs.graded_dim(d)

