"""The unitary between the group space and the edge space plus basepoint,
and exact finite defect matrices s?b - a?t in both directions.

Columns are enumerated over the union of equivariance-failure sets of the
inner factors' supports; a one-ring boundary of extra columns is then
computed and certified zero.  A single vanishing boundary column already
certifies a*t = s*b (translating an edge basis vector is injective on the
group algebra), so the certificate is complete, not heuristic.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence

from . import exactrank
from .algebra import (
    EdgeVector,
    GroupAlgebraElement,
    GroupVector,
    StarConvention,
    act_on_edges,
    act_on_group,
    trace,
)
from .errors import GroupMismatchError, SupportBoundViolation
from .scalars import ExactComplex, ZERO
from .words import (
    BASEPOINT,
    Basepoint,
    GeneratorSet,
    ReducedWord,
    edge_to_word,
    equivariance_failure_set,
    format_edge_or_basepoint,
    format_word,
    identity,
    label_sort_key,
    word_neighbors,
    word_to_edge,
)


def to_edge_space(v: GroupVector) -> EdgeVector:
    """Basis rule: word w maps to its terminal edge (identity to '*').
    Unitary: preserves the inner product on finitely supported vectors."""
    return EdgeVector(v.gens, {word_to_edge(w): c for w, c in v.entries.items()})


def to_group_space(w: EdgeVector) -> GroupVector:
    """Exact two-sided inverse of to_edge_space."""
    return GroupVector(w.gens, {edge_to_word(e, w.gens): c for e, c in w.entries.items()})


def _outer_action(a: GroupAlgebraElement, v: EdgeVector, convention: StarConvention) -> EdgeVector:
    """Edge-space action used inside defect operators: the algebra unit must
    act as the identity operator (so s = 1 contributes the bare unitary),
    hence under ZERO the identity coefficient passes the basepoint through."""
    out = act_on_edges(a, v, convention)
    if convention is StarConvention.ZERO:
        star = v.entries.get(BASEPOINT)
        if star is not None:
            t = trace(a)
            if t:
                out = out + EdgeVector(a.gens, {BASEPOINT: t * star})
    return out


def format_label(label, gens: GeneratorSet) -> str:
    if isinstance(label, ReducedWord):
        return format_word(label)
    return format_edge_or_basepoint(label)


class DefectMatrix:
    """Exact finite matrix with basis labels on rows and columns.

    Labels are words or edges-or-basepoint; rank and pivot columns are
    independent of label order (the stored order is canonical length-lex)."""

    def __init__(self, gens: GeneratorSet, row_labels: Sequence, col_labels: Sequence,
                 columns: Dict[object, Dict[object, ExactComplex]]):
        self.gens = gens
        self.row_labels = list(row_labels)
        self.col_labels = list(col_labels)
        self.columns = columns
        self._rank_pivots = None

    @classmethod
    def from_columns(cls, gens: GeneratorSet, col_labels: Sequence,
                     columns: Dict[object, Dict[object, ExactComplex]]) -> "DefectMatrix":
        rows = set()
        for col in columns.values():
            rows.update(col.keys())
        row_labels = sorted(rows, key=lambda r: label_sort_key(r, gens))
        col_labels = sorted(col_labels, key=lambda c: label_sort_key(c, gens))
        return cls(gens, row_labels, col_labels, columns)

    @property
    def shape(self):
        return (len(self.row_labels), len(self.col_labels))

    def entry(self, row, col) -> ExactComplex:
        return self.columns.get(col, {}).get(row, ZERO)

    def dense_rows(self) -> List[List[ExactComplex]]:
        return [
            [self.columns.get(c, {}).get(r, ZERO) for c in self.col_labels]
            for r in self.row_labels
        ]

    def _ranked(self):
        if self._rank_pivots is None:
            self._rank_pivots = exactrank.rank_with_pivots(self.dense_rows())
        return self._rank_pivots

    def rank(self) -> int:
        return self._ranked()[0]

    def pivot_col_labels(self) -> List:
        return [self.col_labels[j] for j in self._ranked()[1]]

    def is_zero(self) -> bool:
        return all(not v for col in self.columns.values() for v in col.values())

    def sparse(self) -> Dict:
        return {
            (r, c): v
            for c, col in self.columns.items()
            for r, v in col.items()
            if v
        }

    def equals(self, other: "DefectMatrix") -> bool:
        """Entrywise equality with labels aligned; missing labels read as 0."""
        return self.sparse() == other.sparse()

    def __add__(self, other: "DefectMatrix") -> "DefectMatrix":
        if self.gens.names != other.gens.names:
            raise GroupMismatchError("defect matrices over different groups")
        columns: Dict[object, Dict[object, ExactComplex]] = {}
        for src in (self, other):
            for c, col in src.columns.items():
                dst = columns.setdefault(c, {})
                for r, v in col.items():
                    s = dst.get(r, ZERO) + v
                    if s:
                        dst[r] = s
                    elif r in dst:
                        del dst[r]
        labels = set(self.col_labels) | set(other.col_labels)
        return DefectMatrix.from_columns(self.gens, labels, columns)

    def __neg__(self) -> "DefectMatrix":
        columns = {c: {r: -v for r, v in col.items()} for c, col in self.columns.items()}
        return DefectMatrix(self.gens, self.row_labels, self.col_labels, columns)

    def conjugate_transpose(self) -> "DefectMatrix":
        """Adjoint with respect to the orthonormal bases: rows and columns
        swap label families and entries conjugate."""
        columns: Dict[object, Dict[object, ExactComplex]] = {}
        for c, col in self.columns.items():
            for r, v in col.items():
                columns.setdefault(r, {})[c] = v.conjugate()
        return DefectMatrix(self.gens, self.col_labels, self.row_labels, columns)

    def to_json_dict(self) -> Dict:
        return {
            "rows": [format_label(r, self.gens) for r in self.row_labels],
            "cols": [format_label(c, self.gens) for c in self.col_labels],
            "entries": [
                [[str(v.re), str(v.im)] for v in row] for row in self.dense_rows()
            ],
        }

    def __repr__(self):
        return f"<DefectMatrix {self.shape[0]}x{self.shape[1]}>"


def _column_support(b: GroupAlgebraElement, t: GroupAlgebraElement) -> List[ReducedWord]:
    support = set()
    for h in list(b.support()) + list(t.support()):
        support.update(equivariance_failure_set(h))
    return sorted(support, key=lambda w: w.sort_key())


def _check_quadruple_groups(a, b, s, t) -> GeneratorSet:
    gens = a.gens
    for other in (b, s, t):
        if other.gens.names != gens.names:
            raise GroupMismatchError("quadruple entries over different generator sets")
    return gens


def defect_matrix(
    a: GroupAlgebraElement,
    b: GroupAlgebraElement,
    s: GroupAlgebraElement,
    t: GroupAlgebraElement,
    convention: StarConvention = StarConvention.ZERO,
) -> DefectMatrix:
    """Matrix of v -> s.(P(b.v)) - a.(P(t.v)) on its certified column support
    (columns indexed by words, rows by edges-or-basepoint)."""
    gens = _check_quadruple_groups(a, b, s, t)

    def column(w: ReducedWord) -> Dict:
        e_w = GroupVector(gens, {w: ExactComplex(1)})
        lhs = _outer_action(s, to_edge_space(act_on_group(b, e_w)), convention)
        rhs = _outer_action(a, to_edge_space(act_on_group(t, e_w)), convention)
        return (lhs - rhs).entries

    support = _column_support(b, t)
    columns = {w: column(w) for w in support}
    in_support = set(support)
    for w in support:
        for nb in word_neighbors(w):
            if nb in in_support:
                continue
            in_support.add(nb)
            if column(nb):
                raise SupportBoundViolation(format_word(nb))
    return DefectMatrix.from_columns(gens, support, columns)


def defect_matrix_inv(
    a: GroupAlgebraElement,
    b: GroupAlgebraElement,
    s: GroupAlgebraElement,
    t: GroupAlgebraElement,
    convention: StarConvention = StarConvention.ZERO,
) -> DefectMatrix:
    """Matrix of w -> s.(Pinv(b.w)) - a.(Pinv(t.w)) on its certified support
    (columns indexed by edges-or-basepoint, rows by words)."""
    gens = _check_quadruple_groups(a, b, s, t)

    def column(e) -> Dict:
        e_e = EdgeVector(gens, {e: ExactComplex(1)})
        lhs = act_on_group(s, to_group_space(_outer_action(b, e_e, convention)))
        rhs = act_on_group(a, to_group_space(_outer_action(t, e_e, convention)))
        return (lhs - rhs).entries

    word_support = _column_support(b, t)
    support: List = []
    if word_support:
        support.append(BASEPOINT)
        support.extend(word_to_edge(w) for w in word_support if not w.is_identity())
    columns = {e: column(e) for e in support}
    seen = set(word_support)
    for w in word_support:
        for nb in word_neighbors(w):
            if nb in seen:
                continue
            seen.add(nb)
            if column(word_to_edge(nb)):
                raise SupportBoundViolation(format_label(word_to_edge(nb), gens))
    return DefectMatrix.from_columns(gens, support, columns)


class BlockDefectMatrix:
    """The two defect directions arranged anti-diagonally; rank adds."""

    def __init__(self, forward: DefectMatrix, backward: DefectMatrix):
        self.forward = forward
        self.backward = backward

    def rank(self) -> int:
        return self.forward.rank() + self.backward.rank()

    def to_json_dict(self) -> Dict:
        return {"P_block": self.forward.to_json_dict(), "P_inv_block": self.backward.to_json_dict()}


def block_defect(
    a: GroupAlgebraElement,
    b: GroupAlgebraElement,
    s: GroupAlgebraElement,
    t: GroupAlgebraElement,
    convention: StarConvention = StarConvention.ZERO,
) -> BlockDefectMatrix:
    return BlockDefectMatrix(
        defect_matrix(a, b, s, t, convention),
        defect_matrix_inv(a, b, s, t, convention),
    )


def commutator_defect(alpha: GroupAlgebraElement, convention: StarConvention = StarConvention.ZERO) -> DefectMatrix:
    """Defect of the commutator quadruple (alpha, alpha, 1, 1)."""
    from .algebra import ga_one

    one = ga_one(alpha.gens)
    return defect_matrix(alpha, alpha, one, one, convention)
