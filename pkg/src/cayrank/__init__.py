"""Exact commutation-defect ranks on Cayley trees of free groups.

Everything is computed over the Gaussian rationals with no rounding: the
terminal-edge bijection between a free group and its Cayley-tree edges, the
finite defect matrices s?b - a?t it induces for fraction presentations
(a, b, s, t), their exact ranks with witness columns, windowed rank profiles
of coefficient streams, a Hankel-rank oracle for one-variable rationality,
and truncated expansion of rational expressions.

All values are immutable and all operations pure; everything is safe for
concurrent use.
"""

__version__ = "0.1.0"

from .algebra import (
    EdgeVector,
    GroupAlgebraElement,
    GroupVector,
    StarConvention,
    act_on_edges,
    act_on_group,
    ga_add,
    ga_adjoint,
    ga_mul,
    ga_one,
    ga_scalar,
    ga_scale,
    ga_word,
    ga_zero,
    trace,
)
from .criterion import (
    CriterionReport,
    Quadruple,
    RankProfile,
    SeriesStream,
    Verdict,
    check_criterion,
    classify,
    family_sequence,
    family_stream,
    hankel_rank_profile,
    hankel_stabilized,
    lemma_identity_suite,
    make_quadruple,
    stream_from_element,
    stream_from_json,
    windowed_profile,
)
from .expressions import (
    Expression,
    expr_add,
    expr_adjoint,
    expr_inv,
    expr_mul,
    expr_neg,
    expr_scalar_mul,
    leaf,
)
from .fredholm import (
    BlockDefectMatrix,
    DefectMatrix,
    block_defect,
    commutator_defect,
    defect_matrix,
    defect_matrix_inv,
    to_edge_space,
    to_group_space,
)
from .parsing import format_expression, parse_element, parse_expression
from .rational import (
    LinearSystem,
    SeriesTruncation,
    compile_expression,
    expand_exact,
    expand_numeric,
    quadruple_from_expression,
    solve_truncated,
    stream_from_expression,
)
from .scalars import ExactComplex
from .words import (
    BASEPOINT,
    Edge,
    GeneratorSet,
    ReducedWord,
    act_edge,
    ball,
    cancellation_length,
    edge_to_word,
    equivariance_failure_set,
    generator,
    generator_set,
    identity,
    invert,
    multiply,
    parse_group_spec,
    parse_word,
    reduce,
    sphere,
    word_to_edge,
)
