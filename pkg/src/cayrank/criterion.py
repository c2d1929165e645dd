"""The rationality-criterion engine: quadruple verification with exact rank
reports, the windowed commutation-defect profile for series given by
coefficient oracles, and the independent Hankel-rank oracle.

The windowed profile always uses the zero-convention operator extension
(the basepoint row sees the identity-word coefficient of the series); the
augmentation of an infinite series diverges, so the unital flag only applies
to finite group-algebra defects.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from . import exactrank
from .algebra import (
    GroupAlgebraElement,
    StarConvention,
    ga_adjoint,
    ga_mul,
    ga_one,
    ga_word,
)
from .errors import (
    ConfigError,
    DenominatorMismatch,
    IdentityViolation,
    StreamTruncated,
    ZeroDenominator,
)
from .fredholm import (
    BlockDefectMatrix,
    DefectMatrix,
    block_defect,
    defect_matrix,
    defect_matrix_inv,
    format_label,
)
from .scalars import ExactComplex, ZERO
from .words import (
    BASEPOINT,
    GeneratorSet,
    ReducedWord,
    ball,
    edge_to_word,
    format_word,
    generator,
    identity,
    invert,
    multiply,
    parse_word,
    word_to_edge,
)


# ---------------------------------------------------------------------------
# quadruples


@dataclass(frozen=True)
class Quadruple:
    """Data (a, b, s, t) with a*t = s*b and s, t != 0, presenting the formal
    fraction u = s^-1 a = b t^-1."""

    a: GroupAlgebraElement
    b: GroupAlgebraElement
    s: GroupAlgebraElement
    t: GroupAlgebraElement

    def __post_init__(self):
        if self.s.is_zero() or self.t.is_zero():
            raise ZeroDenominator("s and t must be nonzero")
        residual = ga_mul(self.a, self.t) - ga_mul(self.s, self.b)
        if not residual.is_zero():
            raise IdentityViolation(residual)

    @property
    def gens(self) -> GeneratorSet:
        return self.a.gens


def make_quadruple(a, b, s, t) -> Quadruple:
    return Quadruple(a, b, s, t)


@dataclass
class CriterionReport:
    identity_holds: bool
    rank_p: int
    rank_p_inv: int
    rank_f: int
    witnesses_p: List[str]
    witnesses_p_inv: List[str]
    boundary_certified: bool
    convention: StarConvention
    matrix_p: DefectMatrix = field(repr=False, default=None)
    matrix_p_inv: DefectMatrix = field(repr=False, default=None)


def check_criterion(q: Quadruple, convention: StarConvention = StarConvention.ZERO) -> CriterionReport:
    """Assemble both defect matrices and report exact ranks and witness
    columns.  Always terminates with finite ranks; the boundary certificates
    inside the assembly prove the column support is complete."""
    fwd = defect_matrix(q.a, q.b, q.s, q.t, convention)
    bwd = defect_matrix_inv(q.a, q.b, q.s, q.t, convention)
    gens = q.gens
    return CriterionReport(
        identity_holds=True,
        rank_p=fwd.rank(),
        rank_p_inv=bwd.rank(),
        rank_f=fwd.rank() + bwd.rank(),
        witnesses_p=[format_label(c, gens) for c in fwd.pivot_col_labels()],
        witnesses_p_inv=[format_label(c, gens) for c in bwd.pivot_col_labels()],
        boundary_certified=True,
        convention=convention,
        matrix_p=fwd,
        matrix_p_inv=bwd,
    )


# ---------------------------------------------------------------------------
# lemma identity suite


def shares_denominators(q1: Quadruple, q2: Quadruple) -> bool:
    return q1.s == q2.s and q1.t == q2.t


def is_chained(q1: Quadruple, q2: Quadruple) -> bool:
    """q1 = (q, x, p, y), q2 = (r, y, q, z): the product presents u*v."""
    return q2.s == q1.a and q2.b == q1.t


def check_additivity(q1: Quadruple, q2: Quadruple, convention=StarConvention.ZERO) -> bool:
    """defect(a+c, b+d, s, t) = defect(a,b,s,t) + defect(c,d,s,t), exactly,
    in both directions."""
    if not shares_denominators(q1, q2):
        raise DenominatorMismatch("additivity needs shared (s, t)")
    q_sum = Quadruple(q1.a + q2.a, q1.b + q2.b, q1.s, q1.t)
    lhs = defect_matrix(q_sum.a, q_sum.b, q_sum.s, q_sum.t, convention)
    rhs = defect_matrix(q1.a, q1.b, q1.s, q1.t, convention) + defect_matrix(
        q2.a, q2.b, q2.s, q2.t, convention
    )
    lhs_i = defect_matrix_inv(q_sum.a, q_sum.b, q_sum.s, q_sum.t, convention)
    rhs_i = defect_matrix_inv(q1.a, q1.b, q1.s, q1.t, convention) + defect_matrix_inv(
        q2.a, q2.b, q2.s, q2.t, convention
    )
    return lhs.equals(rhs) and lhs_i.equals(rhs_i)


def check_telescoping(q1: Quadruple, q2: Quadruple, convention=StarConvention.ZERO) -> bool:
    """Chained product rule with the corrected '+' sign:
    defect(product) = defect(step 1) + defect(step 2), both directions."""
    if not is_chained(q1, q2):
        raise DenominatorMismatch("telescoping needs q2.s = q1.a and q2.b = q1.t")
    q_prod = Quadruple(q2.a, q1.b, q1.s, q2.t)
    lhs = defect_matrix(q_prod.a, q_prod.b, q_prod.s, q_prod.t, convention)
    rhs = defect_matrix(q1.a, q1.b, q1.s, q1.t, convention) + defect_matrix(
        q2.a, q2.b, q2.s, q2.t, convention
    )
    lhs_i = defect_matrix_inv(q_prod.a, q_prod.b, q_prod.s, q_prod.t, convention)
    rhs_i = defect_matrix_inv(q1.a, q1.b, q1.s, q1.t, convention) + defect_matrix_inv(
        q2.a, q2.b, q2.s, q2.t, convention
    )
    return lhs.equals(rhs) and lhs_i.equals(rhs_i)


def check_inversion(q: Quadruple, convention=StarConvention.ZERO) -> bool:
    """The role-swapped quadruple (s, t, a, b), presenting the inverse, has
    the negated defects; ranks are equal."""
    if q.a.is_zero() or q.b.is_zero():
        raise ZeroDenominator("inversion needs a != 0 and b != 0")
    q_inv = Quadruple(q.s, q.t, q.a, q.b)
    fwd, fwd_inv = (
        defect_matrix(q.a, q.b, q.s, q.t, convention),
        defect_matrix(q_inv.a, q_inv.b, q_inv.s, q_inv.t, convention),
    )
    bwd, bwd_inv = (
        defect_matrix_inv(q.a, q.b, q.s, q.t, convention),
        defect_matrix_inv(q_inv.a, q_inv.b, q_inv.s, q_inv.t, convention),
    )
    return (
        fwd_inv.equals(-fwd)
        and bwd_inv.equals(-bwd)
        and fwd_inv.rank() == fwd.rank()
        and bwd_inv.rank() == bwd.rank()
    )


def check_adjoint(q: Quadruple, convention=StarConvention.ZERO) -> bool:
    """Conjugate transposes of the two defects equal the opposite-direction
    defects of the adjoint arrangement (t*, s*, b*, a*); ranks agree."""
    a, b, s, t = (ga_adjoint(q.t), ga_adjoint(q.s), ga_adjoint(q.b), ga_adjoint(q.a))
    fwd = defect_matrix(q.a, q.b, q.s, q.t, convention)
    bwd = defect_matrix_inv(q.a, q.b, q.s, q.t, convention)
    adj_bwd = defect_matrix_inv(a, b, s, t, convention)
    adj_fwd = defect_matrix(a, b, s, t, convention)
    return (
        fwd.conjugate_transpose().equals(adj_bwd)
        and bwd.conjugate_transpose().equals(adj_fwd)
        and fwd.rank() == adj_bwd.rank()
        and bwd.rank() == adj_fwd.rank()
    )


@dataclass
class LemmaSuiteReport:
    additivity: Optional[bool]
    telescoping: Optional[bool]
    inversion: Optional[bool]
    adjoint: bool

    def all_passed(self) -> bool:
        return all(v is not False for v in (self.additivity, self.telescoping, self.inversion, self.adjoint))


def lemma_identity_suite(q1: Quadruple, q2: Quadruple, convention=StarConvention.ZERO) -> LemmaSuiteReport:
    """Run the closure identities the pair supports.  Additivity needs shared
    denominators, telescoping the chained form; at least one must apply.
    Inversion and adjoint run on q1 (inversion skipped when a or b is 0)."""
    additivity = telescoping = None
    if shares_denominators(q1, q2):
        additivity = check_additivity(q1, q2, convention)
    if is_chained(q1, q2):
        telescoping = check_telescoping(q1, q2, convention)
    if additivity is None and telescoping is None:
        raise DenominatorMismatch("pair is neither shared-denominator nor chained")
    inversion = None
    if not q1.a.is_zero() and not q1.b.is_zero():
        inversion = check_inversion(q1, convention)
    adjoint = check_adjoint(q1, convention)
    return LemmaSuiteReport(additivity, telescoping, inversion, adjoint)


# ---------------------------------------------------------------------------
# series streams


class SeriesStream:
    """Coefficient oracle word -> ExactComplex with a sound per-radius support
    bound.  known_radius None means every word can be served."""

    def __init__(
        self,
        gens: GeneratorSet,
        coefficient_fn: Callable[[ReducedWord], ExactComplex],
        support_fn: Optional[Callable[[int], Iterable[ReducedWord]]] = None,
        known_radius: Optional[int] = None,
        name: str = "stream",
    ):
        self.gens = gens
        self._coefficient_fn = coefficient_fn
        self._support_fn = support_fn
        self.known_radius = known_radius
        self.name = name

    def coefficient(self, w: ReducedWord) -> ExactComplex:
        if self.known_radius is not None and len(w) > self.known_radius:
            raise StreamTruncated(format_word(w))
        return ExactComplex.coerce(self._coefficient_fn(w))

    def support(self, radius: int) -> List[ReducedWord]:
        """A finite set containing every nonzero-coefficient word of length
        <= radius (sound, not necessarily tight)."""
        if self._support_fn is not None:
            return [w for w in self._support_fn(radius) if len(w) <= radius]
        return [w for w in ball(self.gens, radius) if self.coefficient(w)]


def stream_from_element(alpha: GroupAlgebraElement, name: str = "finite") -> SeriesStream:
    return SeriesStream(
        alpha.gens,
        alpha.coefficient,
        support_fn=lambda radius: list(alpha.support()),
        known_radius=None,
        name=name,
    )


def stream_from_json(data: Dict, gens: GeneratorSet, name: str = "json") -> SeriesStream:
    """Ingest {"coeffs": [{"word": ..., "re": "p/q", "im": "p/q"}...], "radius": N}."""
    try:
        radius = int(data["radius"])
        table: Dict[ReducedWord, ExactComplex] = {}
        for item in data["coeffs"]:
            w = parse_word(gens, item["word"])
            table[w] = ExactComplex(Fraction(str(item.get("re", "0"))), Fraction(str(item.get("im", "0"))))
    except (KeyError, TypeError, ValueError) as exc:
        raise ConfigError(f"malformed stream JSON: {exc}") from exc
    return SeriesStream(
        gens,
        lambda w: table.get(w, ZERO),
        support_fn=lambda r: list(table.keys()),
        known_radius=radius,
        name=name,
    )


# ---------------------------------------------------------------------------
# built-in one-variable coefficient families


def _catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for p in range(2, int(math.isqrt(n)) + 1):
        if n % p == 0:
            return False
    return True


def _fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def family_sequence(spec: str, count: int) -> List[ExactComplex]:
    """Coefficient sequence c_0..c_{count-1} of a named family.

    Families: geometric:<q>, poly-geometric:<q>, periodic:<c0,c1,...>,
    fibonacci, factorial, prime-indicator, catalan-reciprocal, harmonic."""
    name, _, arg = spec.partition(":")
    name = name.strip()
    if name == "geometric":
        q = Fraction(arg or "1/2")
        return [ExactComplex(q**n) for n in range(count)]
    if name == "poly-geometric":
        q = Fraction(arg or "1/2")
        return [ExactComplex((n + 1) * q**n) for n in range(count)]
    if name == "periodic":
        pattern = [Fraction(p) for p in (arg or "0,1").split(",")]
        return [ExactComplex(pattern[n % len(pattern)]) for n in range(count)]
    if name == "fibonacci":
        return [ExactComplex(_fibonacci(n)) for n in range(count)]
    if name == "factorial":
        return [ExactComplex(Fraction(1, math.factorial(n))) for n in range(count)]
    if name == "prime-indicator":
        return [ExactComplex(1 if _is_prime(n) else 0) for n in range(count)]
    if name == "catalan-reciprocal":
        return [ExactComplex(Fraction(1, _catalan(n))) for n in range(count)]
    if name == "harmonic":
        return [ExactComplex(Fraction(1, n + 1)) for n in range(count)]
    raise ConfigError(f"unknown series family {spec!r}")


FAMILY_NAMES = (
    "geometric:<q>",
    "poly-geometric:<q>",
    "periodic:<c0,c1,...>",
    "fibonacci",
    "factorial",
    "prime-indicator",
    "catalan-reciprocal",
    "harmonic",
    "finite:<expr>",
)


def family_stream(spec: str, gens: GeneratorSet) -> SeriesStream:
    """Stream of a named family, supported on nonnegative powers of the first
    generator.  (finite:<expr> is handled by the caller, which owns parsing.)"""
    cache = family_sequence(spec, 1)  # validates the name eagerly
    x_index = 1

    def power_of_x(w: ReducedWord) -> Optional[int]:
        if w.is_identity():
            return 0
        if all(l == x_index for l in w.letters):
            return len(w)
        return None

    def coeff(w: ReducedWord) -> ExactComplex:
        n = power_of_x(w)
        if n is None:
            return ZERO
        nonlocal cache
        if n >= len(cache):
            cache = family_sequence(spec, 2 * n + 1)
        return cache[n]

    def support(radius: int) -> List[ReducedWord]:
        x = generator(gens, x_index)
        out, w = [], identity(gens)
        for _ in range(radius + 1):
            out.append(w)
            w = multiply(w, x)
        return out

    return SeriesStream(gens, coeff, support_fn=support, known_radius=None, name=spec)


# ---------------------------------------------------------------------------
# windowed commutation-defect profile


@dataclass
class RankProfile:
    """Table (j, k) -> exact rank of the windowed commutation defect;
    monotone nondecreasing in both arguments."""

    jmax: int
    kmax: int
    table: Dict[Tuple[int, int], int]

    def rank_at(self, j: int, k: int) -> int:
        return self.table[(j, k)]

    def diagonal(self) -> List[int]:
        n = min(self.jmax, self.kmax)
        return [self.table[(j, j)] for j in range(1, n + 1)]


def _profile_entries(stream: SeriesStream, jmax: int, kmax: int):
    """Full windowed matrix of Pu - uP: columns over the jmax word ball, rows
    over the basepoint plus the kmax edge ball, each row tagged with its
    depth.  Every entry touches at most two stream coefficients."""
    gens = stream.gens
    cols = list(ball(gens, jmax))

    def entry(row, g: ReducedWord) -> ExactComplex:
        if g.is_identity():
            if row is BASEPOINT:
                return ZERO
            return stream.coefficient(edge_to_word(row, gens))
        if row is BASEPOINT:
            return stream.coefficient(invert(g))
        t1 = stream.coefficient(multiply(edge_to_word(row, gens), invert(g)))
        eg = word_to_edge(g)
        if row.gen == eg.gen:
            t2 = stream.coefficient(multiply(row.base, invert(eg.base)))
        else:
            t2 = ZERO
        return t1 - t2

    rows: List[Tuple[int, List[ExactComplex]]] = [(0, [entry(BASEPOINT, g) for g in cols])]
    for w in ball(gens, kmax):
        if not w.is_identity():
            rows.append((len(w), [entry(word_to_edge(w), g) for g in cols]))
    return cols, rows


def _window_rank(cols, rows, j: int, k: int) -> int:
    col_idx = [i for i, g in enumerate(cols) if len(g) <= j]
    sub = [[row[i] for i in col_idx] for depth, row in rows if depth <= k]
    return exactrank.rank(sub)


def windowed_profile(stream: SeriesStream, jmax: int, kmax: int) -> RankProfile:
    """For each (j, k): the exact rank of the windowed commutation defect with
    columns over words of length <= j and rows over the radius-k edge ball
    plus the basepoint."""
    if jmax < 1 or kmax < 1:
        raise ConfigError("profile radii must be >= 1")
    cols, rows = _profile_entries(stream, jmax, kmax)
    table = {
        (j, k): _window_rank(cols, rows, j, k)
        for j in range(1, jmax + 1)
        for k in range(1, kmax + 1)
    }
    return RankProfile(jmax, kmax, table)


def diagonal_ranks(stream: SeriesStream, window: int) -> List[int]:
    """The diagonal [rho(1,1), ..., rho(window,window)] without the full grid."""
    if window < 1:
        raise ConfigError("window must be >= 1")
    cols, rows = _profile_entries(stream, window, window)
    return [_window_rank(cols, rows, j, j) for j in range(1, window + 1)]


@dataclass
class Verdict:
    """Semi-decision outcome of the plateau heuristic: finite windows cannot
    prove infinite rank, so GROWING only reports the observed increments."""

    kind: str  # "STABILIZED" | "GROWING"
    rank: Optional[int]
    increments: Optional[List[int]]
    window: int
    plateau: int
    diagonal: List[int]

    def stabilized(self) -> bool:
        return self.kind == "STABILIZED"


def classify(stream: SeriesStream, window: int, plateau_length: int = 4) -> Verdict:
    """STABILIZED(R) when the last plateau_length diagonal ranks all equal R,
    else GROWING with the observed increments."""
    if plateau_length < 2:
        raise ConfigError("plateau length must be >= 2")
    if window < plateau_length + 2:
        raise ConfigError("window must be >= plateau length + 2")
    diag = diagonal_ranks(stream, window)
    tail = diag[-plateau_length:]
    if len(set(tail)) == 1:
        return Verdict("STABILIZED", tail[0], None, window, plateau_length, diag)
    increments = [b - a for a, b in zip(diag, diag[1:])]
    return Verdict("GROWING", None, increments, window, plateau_length, diag)


# ---------------------------------------------------------------------------
# Hankel oracle (independent route: plain exact elimination, no shared code
# with the Bareiss path above)


def _plain_rank(matrix: List[List[ExactComplex]]) -> int:
    m = [row[:] for row in matrix]
    if not m or not m[0]:
        return 0
    n_rows, n_cols = len(m), len(m[0])
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ExactComplex(1) / m[r][c]
        m[r] = [v * inv for v in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [vi - f * vr for vi, vr in zip(m[i], m[r])]
        r += 1
        if r == n_rows:
            break
    return r


def hankel_rank_profile(coeffs: Sequence[ExactComplex], n: int) -> List[int]:
    """Rank of the m-by-m Hankel matrix (c_{i+j}) for m = 1..n.  Needs at
    least 2n-1 coefficients."""
    if len(coeffs) < 2 * n - 1:
        raise ConfigError(f"need at least {2 * n - 1} coefficients for order {n}")
    coeffs = [ExactComplex.coerce(c) for c in coeffs]
    out = []
    for m in range(1, n + 1):
        out.append(_plain_rank([[coeffs[i + j] for j in range(m)] for i in range(m)]))
    return out


def hankel_stabilized(ranks: Sequence[int], plateau_length: int = 4) -> bool:
    """The oracle's finite/infinite verdict under the same plateau rule."""
    if len(ranks) < plateau_length:
        raise ConfigError("not enough orders for the requested plateau")
    tail = list(ranks)[-plateau_length:]
    return len(set(tail)) == 1
