"""Reduced words of a free group, its Cayley-tree edges, and the geodesic
terminal-edge bijection between group elements and edges-plus-basepoint.

Letters are signed 1-based generator indices: +k is the k-th generator,
-k its inverse.  All values here are immutable and all functions pure.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

from .errors import GroupMismatchError, UnknownGeneratorError, WordSyntaxError

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*$")
_RESERVED = {"i", "1"}


@dataclass(frozen=True)
class GeneratorSet:
    """A finite free generating set; rank >= 1, names pairwise distinct."""

    names: tuple

    def __post_init__(self):
        if not self.names:
            raise ValueError("need at least one generator")
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be pairwise distinct")
        for name in self.names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid generator name {name!r}")
            if name in _RESERVED:
                raise ValueError(f"generator name {name!r} is reserved")

    @property
    def rank(self) -> int:
        return len(self.names)

    def index_of(self, name: str) -> int:
        try:
            return self.names.index(name) + 1
        except ValueError:
            raise UnknownGeneratorError(f"unknown generator {name!r}") from None

    def letter_name(self, letter: int) -> str:
        name = self.names[abs(letter) - 1]
        return name if letter > 0 else name + "^-1"

    def spec(self) -> str:
        return "F(" + ",".join(self.names) + ")"

    def __repr__(self):
        return f"GeneratorSet({self.names!r})"


def generator_set(*names: str) -> GeneratorSet:
    return GeneratorSet(tuple(names))


def parse_group_spec(text: str) -> GeneratorSet:
    """Parse 'F(x,y)' or a bare comma list 'x,y'."""
    body = text.strip()
    m = re.match(r"F\((.*)\)$", body)
    if m:
        body = m.group(1)
    names = tuple(n.strip() for n in body.split(",") if n.strip())
    if not names:
        raise WordSyntaxError(f"cannot parse group spec {text!r}")
    return GeneratorSet(names)


class ReducedWord:
    """A freely reduced word; the empty word is the group identity."""

    __slots__ = ("gens", "letters", "_hash")

    def __init__(self, gens: GeneratorSet, letters: Sequence[int] = (), _reduced: bool = False):
        letters = tuple(letters)
        for l in letters:
            if l == 0 or abs(l) > gens.rank:
                raise UnknownGeneratorError(f"letter index {l} out of range")
        if not _reduced:
            letters = _reduce_letters(letters)
        object.__setattr__(self, "gens", gens)
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "_hash", hash((gens.names, letters)))

    def __setattr__(self, *_):
        raise AttributeError("ReducedWord is immutable")

    def __len__(self) -> int:
        return len(self.letters)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ReducedWord):
            return NotImplemented
        return self.letters == other.letters and self.gens.names == other.gens.names

    def __hash__(self):
        return self._hash

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "ReducedWord") -> "ReducedWord":
        return multiply(self, other)

    def __invert__(self) -> "ReducedWord":
        return invert(self)

    def sort_key(self):
        """Length-lexicographic key; letters ordered x < x^-1 < y < y^-1 < ..."""
        return (len(self.letters), tuple((abs(l), 0 if l > 0 else 1) for l in self.letters))

    def __repr__(self):
        return f"<word {format_word(self)}>"

    def __str__(self):
        return format_word(self)


def _reduce_letters(letters: Iterable[int]) -> tuple:
    stack: list = []
    for l in letters:
        if stack and stack[-1] == -l:
            stack.pop()
        else:
            stack.append(l)
    return tuple(stack)


def identity(gens: GeneratorSet) -> ReducedWord:
    return ReducedWord(gens, (), _reduced=True)


def generator(gens: GeneratorSet, index: int) -> ReducedWord:
    """The index-th generator as a word, 1-based; negative index for its inverse."""
    return ReducedWord(gens, (index,))


def reduce(gens: GeneratorSet, letters: Sequence[int]) -> ReducedWord:
    """Freely reduce a letter sequence; idempotent and order-independent."""
    return ReducedWord(gens, letters)


def _require_same_group(u: ReducedWord, v: ReducedWord):
    if u.gens.names != v.gens.names:
        raise GroupMismatchError(f"words over {u.gens.spec()} and {v.gens.spec()}")


def multiply(u: ReducedWord, v: ReducedWord) -> ReducedWord:
    _require_same_group(u, v)
    a, b = u.letters, v.letters
    c = 0
    m = min(len(a), len(b))
    while c < m and a[len(a) - 1 - c] == -b[c]:
        c += 1
    return ReducedWord(u.gens, a[: len(a) - c] + b[c:], _reduced=True)


def invert(g: ReducedWord) -> ReducedWord:
    return ReducedWord(g.gens, tuple(-l for l in reversed(g.letters)), _reduced=True)


def cancellation_length(u: ReducedWord, v: ReducedWord) -> int:
    """c with |uv| = |u| + |v| - 2c: the cancellation at the junction."""
    _require_same_group(u, v)
    a, b = u.letters, v.letters
    c = 0
    m = min(len(a), len(b))
    while c < m and a[len(a) - 1 - c] == -b[c]:
        c += 1
    return c


class Basepoint:
    """The distinguished extra point '*' adjoined to the edge set."""

    _instance: Optional["Basepoint"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "*"

    def sort_key(self):
        return (-1,)


BASEPOINT = Basepoint()


@dataclass(frozen=True)
class Edge:
    """Cayley-tree edge {base, base*gen}; gen is stored positive (canonical)."""

    base: ReducedWord
    gen: int

    def __post_init__(self):
        if self.gen <= 0 or self.gen > self.base.gens.rank:
            raise UnknownGeneratorError(f"edge generator index {self.gen} out of range")

    @property
    def other(self) -> ReducedWord:
        return multiply(self.base, generator(self.base.gens, self.gen))

    def endpoints(self) -> tuple:
        return (self.base, self.other)

    def __repr__(self):
        return f"<edge {format_edge_or_basepoint(self)}>"


EdgeOrBasepoint = Union[Edge, Basepoint]


def word_to_edge(g: ReducedWord) -> EdgeOrBasepoint:
    """Geodesic terminal-edge bijection: identity to '*', otherwise the edge
    joining g to its parent (g with the last letter dropped)."""
    if g.is_identity():
        return BASEPOINT
    last = g.letters[-1]
    if last > 0:
        base = ReducedWord(g.gens, g.letters[:-1], _reduced=True)
        return Edge(base, last)
    return Edge(g, -last)


def edge_to_word(e: EdgeOrBasepoint, gens: Optional[GeneratorSet] = None) -> ReducedWord:
    """Two-sided inverse of word_to_edge: the endpoint farther from the identity."""
    if isinstance(e, Basepoint):
        if gens is None:
            raise ValueError("need a generator set to map '*' to the identity word")
        return identity(gens)
    base, other = e.base, e.other
    return other if len(other) > len(base) else base


def act_edge(g: ReducedWord, e: EdgeOrBasepoint) -> Optional[EdgeOrBasepoint]:
    """Left translation on edges; the basepoint is annihilated (returns None)."""
    if isinstance(e, Basepoint):
        return None
    return Edge(multiply(g, e.base), e.gen)


def equivariance_failure_set(g: ReducedWord) -> frozenset:
    """Inverses of the suffixes of g (empty suffix included); exactly the b
    with word_to_edge(g*b) != act_edge(g, word_to_edge(b)), and |F| = |g|+1."""
    out = []
    for k in range(len(g.letters) + 1):
        suffix = ReducedWord(g.gens, g.letters[len(g.letters) - k:], _reduced=True)
        out.append(invert(suffix))
    return frozenset(out)


def sphere(gens: GeneratorSet, radius: int) -> Iterator[ReducedWord]:
    """All reduced words of exactly the given length, in canonical order."""
    if radius == 0:
        yield identity(gens)
        return
    letters = sorted(
        [k for k in range(1, gens.rank + 1)] + [-k for k in range(1, gens.rank + 1)],
        key=lambda l: (abs(l), 0 if l > 0 else 1),
    )

    def rec(prefix):
        if len(prefix) == radius:
            yield ReducedWord(gens, tuple(prefix), _reduced=True)
            return
        for l in letters:
            if prefix and prefix[-1] == -l:
                continue
            prefix.append(l)
            yield from rec(prefix)
            prefix.pop()

    yield from rec([])


def ball(gens: GeneratorSet, radius: int) -> Iterator[ReducedWord]:
    """All reduced words of length <= radius, shortest first, canonical order."""
    for r in range(radius + 1):
        yield from sphere(gens, r)


def word_neighbors(w: ReducedWord) -> Iterator[ReducedWord]:
    """Right Cayley-graph neighbors w*x^(+-1)."""
    for k in range(1, w.gens.rank + 1):
        yield multiply(w, generator(w.gens, k))
        yield multiply(w, generator(w.gens, -k))


def format_word(w: ReducedWord) -> str:
    if w.is_identity():
        return "1"
    return "*".join(w.gens.letter_name(l) for l in w.letters)


def parse_word(gens: GeneratorSet, text: str) -> ReducedWord:
    """Word text syntax: names with optional ^-1, joined by '*'; identity '1'."""
    body = text.strip()
    if not body:
        raise WordSyntaxError("empty word text")
    if body == "1":
        return identity(gens)
    letters = []
    for pos, piece in enumerate(body.split("*")):
        piece = piece.strip()
        if piece.endswith("^-1"):
            name, sign = piece[:-3].strip(), -1
        else:
            name, sign = piece, 1
        if not name:
            raise WordSyntaxError(f"empty factor in word {text!r}", position=pos)
        letters.append(sign * gens.index_of(name))
    return ReducedWord(gens, letters)


def format_edge_or_basepoint(e: EdgeOrBasepoint) -> str:
    if isinstance(e, Basepoint):
        return "*"
    return f"E({format_word(e.base)},{e.base.gens.names[e.gen - 1]})"


def label_sort_key(label, gens: GeneratorSet):
    """Canonical order for row/column labels: words length-lex; edges by the
    word they correspond to under the bijection, with '*' first."""
    if isinstance(label, ReducedWord):
        return label.sort_key()
    if isinstance(label, Basepoint):
        return (-1,)
    return edge_to_word(label, gens).sort_key()
