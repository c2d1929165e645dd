"""Exact group-algebra arithmetic over the Gaussian rationals and its left
actions on finitely supported group/edge vectors.

The edge-space action follows the annihilation rule for the basepoint: every
group element sends '*' to 0 under the default `zero` convention (so the
action is multiplicative but not unital on that summand), while the `unital`
convention lets the group act trivially on '*', linearizing to the
augmentation.  Ranks downstream differ by at most one between the two.
"""

from __future__ import annotations

import enum
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .errors import GroupMismatchError
from .scalars import ExactComplex, ONE, ZERO
from .words import (
    BASEPOINT,
    Basepoint,
    Edge,
    EdgeOrBasepoint,
    GeneratorSet,
    ReducedWord,
    act_edge,
    format_edge_or_basepoint,
    format_word,
    identity,
    invert,
    label_sort_key,
    multiply,
)


class StarConvention(enum.Enum):
    """How group elements act on the basepoint summand."""

    ZERO = "zero"
    UNITAL = "unital"

    @staticmethod
    def parse(text: str) -> "StarConvention":
        try:
            return StarConvention(text)
        except ValueError:
            raise ValueError(f"unknown star convention {text!r} (use zero|unital)") from None


class GroupAlgebraElement:
    """Finitely supported map word -> ExactComplex; zero coefficients dropped."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: GeneratorSet, terms: Optional[Mapping[ReducedWord, ExactComplex]] = None):
        clean: Dict[ReducedWord, ExactComplex] = {}
        for w, c in (terms or {}).items():
            c = ExactComplex.coerce(c)
            if c:
                clean[w] = c
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("GroupAlgebraElement is immutable")

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, w: ReducedWord) -> ExactComplex:
        return self.terms.get(w, ZERO)

    def support(self) -> Iterable[ReducedWord]:
        return self.terms.keys()

    def support_radius(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def sorted_terms(self) -> Iterable[Tuple[ReducedWord, ExactComplex]]:
        return sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())

    def __eq__(self, other):
        if not isinstance(other, GroupAlgebraElement):
            return NotImplemented
        return self.gens.names == other.gens.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.gens.names, frozenset(self.terms.items())))

    def __add__(self, other):
        return ga_add(self, other)

    def __sub__(self, other):
        return ga_add(self, ga_scale(ExactComplex(-1), other))

    def __neg__(self):
        return ga_scale(ExactComplex(-1), self)

    def __mul__(self, other):
        if isinstance(other, GroupAlgebraElement):
            return ga_mul(self, other)
        return ga_scale(ExactComplex.coerce(other), self)

    def __rmul__(self, other):
        return ga_scale(ExactComplex.coerce(other), self)

    def __repr__(self):
        return f"<ga {format_element(self)}>"

    def __str__(self):
        return format_element(self)


def ga_zero(gens: GeneratorSet) -> GroupAlgebraElement:
    return GroupAlgebraElement(gens)


def ga_one(gens: GeneratorSet) -> GroupAlgebraElement:
    return GroupAlgebraElement(gens, {identity(gens): ONE})


def ga_scalar(gens: GeneratorSet, c) -> GroupAlgebraElement:
    return GroupAlgebraElement(gens, {identity(gens): ExactComplex.coerce(c)})


def ga_word(w: ReducedWord, c=1) -> GroupAlgebraElement:
    return GroupAlgebraElement(w.gens, {w: ExactComplex.coerce(c)})


def _require_same(a: GroupAlgebraElement, b: GroupAlgebraElement):
    if a.gens.names != b.gens.names:
        raise GroupMismatchError(f"elements over {a.gens.spec()} and {b.gens.spec()}")


def ga_add(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    _require_same(a, b)
    terms = dict(a.terms)
    for w, c in b.terms.items():
        terms[w] = terms.get(w, ZERO) + c
    return GroupAlgebraElement(a.gens, terms)


def ga_scale(c, a: GroupAlgebraElement) -> GroupAlgebraElement:
    c = ExactComplex.coerce(c)
    return GroupAlgebraElement(a.gens, {w: c * v for w, v in a.terms.items()})


def ga_mul(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    """Convolution with free reduction: coefficient of g is sum over gh' = g."""
    _require_same(a, b)
    terms: Dict[ReducedWord, ExactComplex] = {}
    for u, cu in a.terms.items():
        for v, cv in b.terms.items():
            w = multiply(u, v)
            terms[w] = terms.get(w, ZERO) + cu * cv
    return GroupAlgebraElement(a.gens, terms)


def ga_adjoint(a: GroupAlgebraElement) -> GroupAlgebraElement:
    """(sum a_g g)* = sum conj(a_g) g^-1; involutive and antimultiplicative."""
    return GroupAlgebraElement(a.gens, {invert(w): c.conjugate() for w, c in a.terms.items()})


def trace(a: GroupAlgebraElement) -> ExactComplex:
    """Coefficient of the identity word."""
    return a.coefficient(identity(a.gens))


def augmentation(a: GroupAlgebraElement) -> ExactComplex:
    s = ZERO
    for c in a.terms.values():
        s = s + c
    return s


class GroupVector:
    """Finitely supported vector with word basis labels."""

    __slots__ = ("gens", "entries")

    def __init__(self, gens: GeneratorSet, entries: Optional[Mapping[ReducedWord, ExactComplex]] = None):
        clean: Dict[ReducedWord, ExactComplex] = {}
        for w, c in (entries or {}).items():
            c = ExactComplex.coerce(c)
            if c:
                clean[w] = c
        self.gens = gens
        self.entries = clean

    def coefficient(self, w: ReducedWord) -> ExactComplex:
        return self.entries.get(w, ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, GroupVector) and self.entries == other.entries

    def __add__(self, other: "GroupVector") -> "GroupVector":
        entries = dict(self.entries)
        for w, c in other.entries.items():
            entries[w] = entries.get(w, ZERO) + c
        return GroupVector(self.gens, entries)

    def __sub__(self, other: "GroupVector") -> "GroupVector":
        entries = dict(self.entries)
        for w, c in other.entries.items():
            entries[w] = entries.get(w, ZERO) - c
        return GroupVector(self.gens, entries)

    def scale(self, c) -> "GroupVector":
        c = ExactComplex.coerce(c)
        return GroupVector(self.gens, {w: c * v for w, v in self.entries.items()})

    def inner(self, other: "GroupVector") -> ExactComplex:
        """Hermitian inner product <v, w> = sum v_g conj(w_g)."""
        s = ZERO
        for w, c in self.entries.items():
            d = other.entries.get(w)
            if d is not None:
                s = s + c * d.conjugate()
        return s

    def __repr__(self):
        body = " + ".join(f"{c}*[{format_word(w)}]" for w, c in sorted(self.entries.items(), key=lambda kv: kv[0].sort_key()))
        return f"<gvec {body or '0'}>"


class EdgeVector:
    """Finitely supported vector with edge-or-basepoint basis labels."""

    __slots__ = ("gens", "entries")

    def __init__(self, gens: GeneratorSet, entries: Optional[Mapping[EdgeOrBasepoint, ExactComplex]] = None):
        clean: Dict[EdgeOrBasepoint, ExactComplex] = {}
        for e, c in (entries or {}).items():
            c = ExactComplex.coerce(c)
            if c:
                clean[e] = c
        self.gens = gens
        self.entries = clean

    def coefficient(self, e: EdgeOrBasepoint) -> ExactComplex:
        return self.entries.get(e, ZERO)

    def is_zero(self) -> bool:
        return not self.entries

    def __eq__(self, other):
        return isinstance(other, EdgeVector) and self.entries == other.entries

    def __add__(self, other: "EdgeVector") -> "EdgeVector":
        entries = dict(self.entries)
        for e, c in other.entries.items():
            entries[e] = entries.get(e, ZERO) + c
        return EdgeVector(self.gens, entries)

    def __sub__(self, other: "EdgeVector") -> "EdgeVector":
        entries = dict(self.entries)
        for e, c in other.entries.items():
            entries[e] = entries.get(e, ZERO) - c
        return EdgeVector(self.gens, entries)

    def scale(self, c) -> "EdgeVector":
        c = ExactComplex.coerce(c)
        return EdgeVector(self.gens, {e: c * v for e, v in self.entries.items()})

    def inner(self, other: "EdgeVector") -> ExactComplex:
        s = ZERO
        for e, c in self.entries.items():
            d = other.entries.get(e)
            if d is not None:
                s = s + c * d.conjugate()
        return s

    def __repr__(self):
        body = " + ".join(
            f"{c}*[{format_edge_or_basepoint(e)}]"
            for e, c in sorted(self.entries.items(), key=lambda kv: label_sort_key(kv[0], self.gens))
        )
        return f"<evec {body or '0'}>"


def basis_group_vector(w: ReducedWord) -> GroupVector:
    return GroupVector(w.gens, {w: ONE})


def basis_edge_vector(gens: GeneratorSet, e: EdgeOrBasepoint) -> EdgeVector:
    return EdgeVector(gens, {e: ONE})


def act_on_group(a: GroupAlgebraElement, v: GroupVector) -> GroupVector:
    """Left multiplication on the word basis: linear and multiplicative."""
    entries: Dict[ReducedWord, ExactComplex] = {}
    for g, cg in a.terms.items():
        for w, cw in v.entries.items():
            gw = multiply(g, w)
            entries[gw] = entries.get(gw, ZERO) + cg * cw
    return GroupVector(a.gens, entries)


def act_on_edges(
    a: GroupAlgebraElement,
    v: EdgeVector,
    convention: StarConvention = StarConvention.ZERO,
) -> EdgeVector:
    """Linearized edge-space action.  Under ZERO the basepoint coefficient is
    annihilated by every group element (the identity included); under UNITAL
    the basepoint is fixed by the group, so it picks up the augmentation."""
    entries: Dict[EdgeOrBasepoint, ExactComplex] = {}
    star = v.entries.get(BASEPOINT)
    for g, cg in a.terms.items():
        for e, ce in v.entries.items():
            if isinstance(e, Basepoint):
                continue
            ge = act_edge(g, e)
            entries[ge] = entries.get(ge, ZERO) + cg * ce
    if star is not None and convention is StarConvention.UNITAL:
        entries[BASEPOINT] = entries.get(BASEPOINT, ZERO) + augmentation(a) * star
    return EdgeVector(a.gens, entries)


def format_element(a: GroupAlgebraElement) -> str:
    """Canonical text form, terms in length-lex order: '1 - 1/2*x + i*y^-1*x'."""
    if a.is_zero():
        return "0"
    parts = []
    for w, c in a.sorted_terms():
        neg = c.im == 0 and c.re < 0 or (c.re == 0 and c.im < 0)
        mag = -c if neg else c
        if w.is_identity():
            body = str(mag)
        elif mag == ONE:
            body = format_word(w)
        else:
            body = f"{mag}*{format_word(w)}"
        if not parts:
            parts.append(body if not neg else f"-{body}")
        else:
            parts.append(("- " if neg else "+ ") + body)
    return " ".join(parts)
