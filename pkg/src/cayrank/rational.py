"""Rational expressions over the group algebra: compilation to block linear
systems (the represented element is one entry of the inverse matrix),
truncated expansion in exact and certified-numeric modes, and full fraction
synthesis over the infinite cyclic group.

Exact expansion is graded: an inverse needs a nonzero scalar constant term
and, after normalization, a nonconstant part supported on positive letters
only.  Finite subtrees are evaluated exactly (no truncation), so the only
truncated objects are certified positively-graded series; internal radii are
enlarged by the finite-leaf cancellation slack, keeping every reported
coefficient a complete finite sum."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

from .algebra import (
    GroupAlgebraElement,
    ga_adjoint,
    ga_mul,
    ga_one,
    ga_scalar,
    ga_word,
    ga_zero,
)
from .criterion import Quadruple, SeriesStream
from .errors import (
    DivisionByZeroPolynomial,
    DominanceFailure,
    NotExpandable,
    RankUnsupported,
    SingularConstantTerm,
    StreamTruncated,
)
from .expressions import (
    Add,
    Adjoint,
    Expression,
    Inv,
    Leaf,
    Mul,
    Neg,
    ScalarMul,
)
from .parsing import format_expression
from .scalars import ExactComplex, ONE, ZERO
from .words import GeneratorSet, ReducedWord, format_word, identity, invert, multiply


# ---------------------------------------------------------------------------
# helpers on elements


def _truncate(a: GroupAlgebraElement, radius: int) -> GroupAlgebraElement:
    return GroupAlgebraElement(a.gens, {w: c for w, c in a.terms.items() if len(w) <= radius})


def _neg_letters(w: ReducedWord) -> int:
    return sum(1 for l in w.letters if l < 0)


def _element_negcap(a: GroupAlgebraElement) -> int:
    return max((_neg_letters(w) for w in a.support()), default=0)


def _is_positive_graded(a: GroupAlgebraElement) -> bool:
    """Support inside {identity} union positive-letter words."""
    return all(all(l > 0 for l in w.letters) for w in a.support())


def _monomial(a: GroupAlgebraElement) -> Optional[Tuple[ReducedWord, ExactComplex]]:
    if len(a.terms) == 1:
        return next(iter(a.terms.items()))
    return None


# ---------------------------------------------------------------------------
# expansion analysis: finite subtrees evaluate exactly; infinite ones carry a
# bound on the negative letters their support words can contain


@dataclass
class _Info:
    finite: Optional[GroupAlgebraElement]  # exact value when the subtree is finite
    negcap: int


def _analyze(e: Expression, memo: Dict[int, _Info]) -> _Info:
    key = id(e)
    if key in memo:
        return memo[key]
    info = _analyze_uncached(e, memo)
    memo[key] = info
    return info


def _analyze_uncached(e: Expression, memo) -> _Info:
    if isinstance(e, Leaf):
        return _Info(e.element, _element_negcap(e.element))
    if isinstance(e, Add):
        l, r = _analyze(e.left, memo), _analyze(e.right, memo)
        if l.finite is not None and r.finite is not None:
            v = l.finite + r.finite
            return _Info(v, _element_negcap(v))
        return _Info(None, max(l.negcap, r.negcap))
    if isinstance(e, Neg):
        o = _analyze(e.operand, memo)
        return _Info(None if o.finite is None else -o.finite, o.negcap)
    if isinstance(e, ScalarMul):
        o = _analyze(e.operand, memo)
        if o.finite is not None:
            v = e.scalar * o.finite
            return _Info(v, _element_negcap(v))
        return _Info(None, o.negcap)
    if isinstance(e, Mul):
        l, r = _analyze(e.left, memo), _analyze(e.right, memo)
        if l.finite is not None and r.finite is not None:
            v = ga_mul(l.finite, r.finite)
            return _Info(v, _element_negcap(v))
        return _Info(None, l.negcap + r.negcap)
    if isinstance(e, Adjoint):
        o = _analyze(e.operand, memo)
        if o.finite is not None:
            v = ga_adjoint(o.finite)
            return _Info(v, _element_negcap(v))
        # adjoint of an infinite series flips the grading; exact mode refuses
        return _Info(None, -1)
    if isinstance(e, Inv):
        o = _analyze(e.operand, memo)
        if o.finite is not None:
            mono = _monomial(o.finite)
            if mono is not None:
                w, c = mono
                v = GroupAlgebraElement(e.gens, {invert(w): ONE / c})
                return _Info(v, _element_negcap(v))
        return _Info(None, 0)  # certified positively graded at evaluation
    raise TypeError(f"unknown expression node {e!r}")


def _eval(e: Expression, radius: int, memo: Dict[int, _Info]) -> GroupAlgebraElement:
    """Exact coefficients of the represented element on the radius ball.
    Finite subtrees come back whole (support may exceed the radius)."""
    info = _analyze(e, memo)
    if info.finite is not None:
        return info.finite
    if isinstance(e, Add):
        return _truncate(_eval(e.left, radius, memo) + _eval(e.right, radius, memo), radius)
    if isinstance(e, Neg):
        return -_eval(e.operand, radius, memo)
    if isinstance(e, ScalarMul):
        return e.scalar * _eval(e.operand, radius, memo)
    if isinstance(e, Mul):
        li, ri = _analyze(e.left, memo), _analyze(e.right, memo)
        if li.negcap < 0 or ri.negcap < 0:
            raise NotExpandable(
                "adjoint of an infinite series is not exactly expandable", node=e
            )
        slack = 2 * (li.negcap + ri.negcap)
        l = _eval(e.left, radius + slack, memo)
        r = _eval(e.right, radius + slack, memo)
        return _truncate(ga_mul(l, r), radius)
    if isinstance(e, Adjoint):
        raise NotExpandable("adjoint of an infinite series is not exactly expandable", node=e)
    if isinstance(e, Inv):
        op_info = _analyze(e.operand, memo)
        if op_info.negcap != 0 and op_info.finite is None:
            raise NotExpandable(
                "inverse operand may carry negative letters beyond the window; "
                "not exactly expandable",
                node=e,
            )
        operand = (
            op_info.finite if op_info.finite is not None else _eval(e.operand, radius, memo)
        )
        c0 = operand.coefficient(identity(e.gens))
        if not c0:
            raise SingularConstantTerm(
                f"constant term of {format_expression(e.operand)} is zero", node=e
            )
        rest = operand - ga_scalar(e.gens, c0)
        if not _is_positive_graded(rest):
            raise NotExpandable(
                "inverse needs a positive-letter nonconstant part after "
                "constant normalization",
                node=e,
            )
        # operand = c0*(1 - beta); inverse = (1/c0) * sum beta^k, and beta
        # raises word length by >= 1, so radius many powers suffice
        beta = (-(ONE / c0)) * rest
        total = ga_one(e.gens)
        acc = ga_one(e.gens)
        for _ in range(radius):
            acc = _truncate(ga_mul(acc, beta), radius)
            if acc.is_zero():
                break
            total = total + acc
        return (ONE / c0) * _truncate(total, radius)
    raise TypeError(f"unknown expression node {e!r}")


# ---------------------------------------------------------------------------
# series truncations


@dataclass
class SeriesTruncation:
    """Coefficients on a radius ball.  Exact mode has no tail bound; numeric
    mode carries a rigorous l1 bound on everything not listed."""

    radius: int
    coefficients: Dict[ReducedWord, ExactComplex]
    exact: bool
    tail_bound: Optional[Fraction] = None

    def coefficient(self, w: ReducedWord) -> ExactComplex:
        if len(w) > self.radius:
            raise StreamTruncated(format_word(w))
        return self.coefficients.get(w, ZERO)

    def sorted_items(self):
        return sorted(self.coefficients.items(), key=lambda kv: kv[0].sort_key())

    def to_stream(self, gens: GeneratorSet, name: str = "expansion") -> SeriesStream:
        return SeriesStream(
            gens,
            lambda w: self.coefficients.get(w, ZERO),
            support_fn=lambda r: list(self.coefficients.keys()),
            known_radius=self.radius,
            name=name,
        )

    def to_json_dict(self) -> Dict:
        out = {
            "radius": self.radius,
            "exactness": "exact" if self.exact else "numeric-with-l1-tail-bound",
            "coefficients": [
                {"word": format_word(w), "re": str(c.re), "im": str(c.im)}
                for w, c in self.sorted_items()
            ],
        }
        if not self.exact:
            out["tail_bound"] = float(self.tail_bound)
            out["coefficients"] = [
                {"word": format_word(w), "re": float(c.re), "im": float(c.im)}
                for w, c in self.sorted_items()
            ]
        return out


def _normalize_monomial_inverses(e: Expression, memo: Dict[int, _Info]) -> Expression:
    """Fold Inv over finite monomial subtrees into leaves (group inverses);
    the graded linear-system solve cannot represent them (zero constant)."""
    if isinstance(e, Leaf):
        return e
    if isinstance(e, Add):
        return Add(
            _normalize_monomial_inverses(e.left, memo),
            _normalize_monomial_inverses(e.right, memo),
        )
    if isinstance(e, Neg):
        return Neg(_normalize_monomial_inverses(e.operand, memo))
    if isinstance(e, ScalarMul):
        return ScalarMul(e.scalar, _normalize_monomial_inverses(e.operand, memo))
    if isinstance(e, Mul):
        return Mul(
            _normalize_monomial_inverses(e.left, memo),
            _normalize_monomial_inverses(e.right, memo),
        )
    if isinstance(e, Adjoint):
        return Adjoint(_normalize_monomial_inverses(e.operand, memo))
    if isinstance(e, Inv):
        info = _analyze(e, memo)
        if info.finite is not None:
            return Leaf(info.finite)
        return Inv(_normalize_monomial_inverses(e.operand, memo))
    raise TypeError(f"unknown expression node {e!r}")


def expand_exact(e: Union[Expression, "LinearSystem"], radius: int) -> SeriesTruncation:
    """Exact coefficients on the radius ball via graded iteration (tree) or
    the truncated solve of a compiled system."""
    if isinstance(e, LinearSystem):
        coeffs = solve_truncated(e, radius)
        return SeriesTruncation(radius, coeffs, exact=True)
    memo: Dict[int, _Info] = {}
    value = _truncate(_eval(e, radius, memo), radius)
    return SeriesTruncation(radius, dict(value.terms), exact=True)


def element_of(e: Expression) -> Optional[GroupAlgebraElement]:
    """The exact group-algebra value when the tree is inverse-free enough to
    have one; None if the value is a genuine series."""
    return _analyze(e, {}).finite


def stream_from_expression(e: Expression, radius: int, name: Optional[str] = None) -> SeriesStream:
    trunc = expand_exact(e, radius)
    return trunc.to_stream(e.gens, name or f"expr:{format_expression(e)}")


# ---------------------------------------------------------------------------
# compilation to linear systems


@dataclass
class LinearSystem:
    """n-by-n matrix over the group algebra with selectors; the represented
    element is the (out_row, in_col) entry of the inverse matrix."""

    gens: GeneratorSet
    matrix: List[List[GroupAlgebraElement]]
    out_row: int
    in_col: int

    @property
    def size(self) -> int:
        return len(self.matrix)


def _zeros(gens, n, m) -> List[List[GroupAlgebraElement]]:
    z = ga_zero(gens)
    return [[z for _ in range(m)] for _ in range(n)]


def _compile(e: Expression) -> LinearSystem:
    gens = e.gens
    if isinstance(e, Leaf):
        one = ga_one(gens)
        return LinearSystem(gens, [[one, -e.element], [ga_zero(gens), one]], 0, 1)
    if isinstance(e, Neg):
        return _compile(ScalarMul(ExactComplex(-1), e.operand))
    if isinstance(e, ScalarMul):
        return _compile(Mul(Leaf(ga_scalar(gens, e.scalar)), e.operand))
    if isinstance(e, (Add, Mul)):
        A = _compile(e.left)
        B = _compile(e.right)
        na, nb = A.size, B.size
        m = _zeros(gens, na + nb, na + nb)
        for i in range(na):
            for j in range(na):
                m[i][j] = A.matrix[i][j]
        for i in range(nb):
            for j in range(nb):
                m[na + i][na + j] = B.matrix[i][j]
        minus_one = ga_scalar(gens, -1)
        if isinstance(e, Mul):
            m[A.in_col][na + B.out_row] = minus_one
        else:
            m[A.in_col][na + B.in_col] = minus_one
            m[A.out_row][na + B.out_row] = m[A.out_row][na + B.out_row] + minus_one
        return LinearSystem(gens, m, A.out_row, na + B.in_col)
    if isinstance(e, Inv):
        A = _compile(e.operand)
        n = A.size
        # border [[A, e_in], [-e_out, 0]]: the corner entry of the inverse is
        # the reciprocal of the represented element; re-border once more to
        # restore the unit selector entries the Add construction relies on
        N = n + 1
        core = _zeros(gens, N, N)
        for i in range(n):
            for j in range(n):
                core[i][j] = A.matrix[i][j]
        core[A.in_col][n] = ga_one(gens)
        core[n][A.out_row] = ga_scalar(gens, -1)
        m = _zeros(gens, N + 2, N + 2)
        m[0][0] = ga_one(gens)
        m[N + 1][N + 1] = ga_one(gens)
        for i in range(N):
            for j in range(N):
                m[1 + i][1 + j] = core[i][j]
        m[0][1 + n] = ga_one(gens)  # selector row picking the corner of core
        m[1 + n][N + 1] = ga_one(gens)  # selector column likewise
        return LinearSystem(gens, m, 0, N + 1)
    if isinstance(e, Adjoint):
        A = _compile(e.operand)
        n = A.size
        m = [[ga_adjoint(A.matrix[j][i]) for j in range(n)] for i in range(n)]
        return LinearSystem(gens, m, A.in_col, A.out_row)
    raise TypeError(f"unknown expression node {e!r}")


def compile_expression(e: Expression) -> LinearSystem:
    """Structural compilation; Inv over finite monomials is folded first
    (their systems would have a singular scalar part)."""
    memo: Dict[int, _Info] = {}
    return _compile(_normalize_monomial_inverses(e, memo))


def _scalar_matrix_inverse(m0: List[List[ExactComplex]]) -> List[List[ExactComplex]]:
    n = len(m0)
    aug = [[m0[i][j] for j in range(n)] + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            raise SingularConstantTerm("scalar part of the system is singular")
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = ONE / aug[r][c]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        r += 1
    return [row[n:] for row in aug]


def solve_truncated(system: LinearSystem, radius: int) -> Dict[ReducedWord, ExactComplex]:
    """Coefficients of the represented element on the radius ball, by a
    Neumann iteration around the scalar part of the system.  The working
    radius is enlarged by the negative-letter slack of the entries; the
    iteration must reach a fixpoint or the system is declared not
    expandable."""
    gens = system.gens
    n = system.size
    one_w = identity(gens)
    m0 = [[system.matrix[i][j].coefficient(one_w) for j in range(n)] for i in range(n)]
    m_plus = [
        [
            GroupAlgebraElement(gens, {w: c for w, c in system.matrix[i][j].terms.items() if not w.is_identity()})
            for j in range(n)
        ]
        for i in range(n)
    ]
    slack = 2 * sum(_element_negcap(system.matrix[i][j]) for i in range(n) for j in range(n))
    work = radius + slack
    m0_inv = _scalar_matrix_inverse(m0)

    def apply_m0_inv(vec: List[GroupAlgebraElement]) -> List[GroupAlgebraElement]:
        out = []
        for i in range(n):
            acc = ga_zero(gens)
            for j in range(n):
                if m0_inv[i][j]:
                    acc = acc + m0_inv[i][j] * vec[j]
            out.append(acc)
        return out

    unit = [ga_one(gens) if i == system.in_col else ga_zero(gens) for i in range(n)]
    xi = apply_m0_inv(unit)
    for _ in range(work + n + 8):
        mx = []
        for i in range(n):
            acc = ga_zero(gens)
            for j in range(n):
                if m_plus[i][j].terms and xi[j].terms:
                    acc = acc + ga_mul(m_plus[i][j], xi[j])
            mx.append(_truncate(acc, work))
        nxt = apply_m0_inv([unit[i] - mx[i] for i in range(n)])
        nxt = [_truncate(v, work) for v in nxt]
        if nxt == xi:
            value = _truncate(xi[system.out_row], radius)
            return dict(value.terms)
        xi = nxt
    raise NotExpandable("system iteration did not stabilize; not graded-expandable")


# ---------------------------------------------------------------------------
# numeric expansion with certified l1 tail bounds (exact rationals inside,
# floats only at the output boundary)


def _l1(coeffs: Dict[ReducedWord, ExactComplex]) -> Fraction:
    return sum((c.l1_bound() for c in coeffs.values()), Fraction(0))


def _modulus_lower(c: ExactComplex) -> Fraction:
    return max(abs(c.re), abs(c.im))


class _Numeric:
    __slots__ = ("coeffs", "tail")

    def __init__(self, coeffs: Dict[ReducedWord, ExactComplex], tail: Fraction):
        self.coeffs = {w: c for w, c in coeffs.items() if c}
        self.tail = tail


def _num_add(a: _Numeric, b: _Numeric) -> _Numeric:
    coeffs = dict(a.coeffs)
    for w, c in b.coeffs.items():
        coeffs[w] = coeffs.get(w, ZERO) + c
    return _Numeric(coeffs, a.tail + b.tail)


def _num_scale(c: ExactComplex, a: _Numeric) -> _Numeric:
    return _Numeric({w: c * v for w, v in a.coeffs.items()}, c.l1_bound() * a.tail)


def _num_mul(a: _Numeric, b: _Numeric, work: int) -> _Numeric:
    coeffs: Dict[ReducedWord, ExactComplex] = {}
    overflow = Fraction(0)
    for u, cu in a.coeffs.items():
        for v, cv in b.coeffs.items():
            w = multiply(u, v)
            val = cu * cv
            if len(w) <= work:
                coeffs[w] = coeffs.get(w, ZERO) + val
            else:
                overflow += val.l1_bound()
    tail = overflow + _l1(a.coeffs) * b.tail + a.tail * _l1(b.coeffs) + a.tail * b.tail
    return _Numeric(coeffs, tail)


def _num_eval(e: Expression, eps: Fraction, work: int) -> _Numeric:
    gens = e.gens
    if isinstance(e, Leaf):
        return _Numeric(dict(e.element.terms), Fraction(0))
    if isinstance(e, Add):
        return _num_add(_num_eval(e.left, eps / 2, work), _num_eval(e.right, eps / 2, work))
    if isinstance(e, Neg):
        return _num_scale(ExactComplex(-1), _num_eval(e.operand, eps, work))
    if isinstance(e, ScalarMul):
        return _num_scale(e.scalar, _num_eval(e.operand, eps, work))
    if isinstance(e, Mul):
        return _num_mul(_num_eval(e.left, eps / 4, work), _num_eval(e.right, eps / 4, work), work)
    if isinstance(e, Adjoint):
        inner = _num_eval(e.operand, eps, work)
        return _Numeric({invert(w): c.conjugate() for w, c in inner.coeffs.items()}, inner.tail)
    if isinstance(e, Inv):
        inner = _num_eval(e.operand, eps / 4, work)
        c0 = inner.coeffs.get(identity(gens), ZERO)
        if not c0:
            raise SingularConstantTerm(
                f"constant term of {format_expression(e.operand)} is zero", node=e
            )
        lower = _modulus_lower(c0)
        rest = _Numeric({w: c for w, c in inner.coeffs.items() if not w.is_identity()}, inner.tail)
        ratio = (_l1(rest.coeffs) + rest.tail) / lower
        if ratio >= 1:
            raise DominanceFailure(format_expression(e), ratio)
        inv_c0 = ONE / c0
        beta = _num_scale(-inv_c0, rest)
        total = _Numeric({identity(gens): ONE}, Fraction(0))
        acc = _Numeric({identity(gens): ONE}, Fraction(0))
        budget = eps / 2
        # sum_{j>K} ratio^j = ratio^{K+1}/(1-ratio); stop once the scaled
        # remainder fits the budget
        rem = ratio / (1 - ratio) if ratio else Fraction(0)
        k = 0
        while rem / lower > budget and k < 100000:
            acc = _num_mul(acc, beta, work)
            total = _num_add(total, acc)
            rem = rem * ratio
            k += 1
        out = _num_scale(inv_c0, total)
        return _Numeric(out.coeffs, out.tail + rem / lower)
    raise TypeError(f"unknown expression node {e!r}")


def expand_numeric(e: Expression, tol: Fraction) -> SeriesTruncation:
    """Coefficients plus a certified l1 bound <= tol on everything omitted.
    Internally exact; the dominance condition is checked at every inverse."""
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    e = _normalize_monomial_inverses(e, {})
    work = 16
    eps = tol / 2
    for _ in range(8):
        result = _num_eval(e, eps, work)
        if result.tail <= tol:
            radius = max((len(w) for w in result.coeffs), default=0)
            return SeriesTruncation(radius, result.coeffs, exact=False, tail_bound=result.tail)
        work *= 2
        eps /= 4
    raise NotExpandable("could not certify the requested tolerance", node=e)


# ---------------------------------------------------------------------------
# rank-1 fraction synthesis (Laurent polynomials over the Gaussian rationals)


def _poly_trim(p: List[ExactComplex]) -> List[ExactComplex]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_add(p, q):
    out = [ZERO] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] = out[i] + c
    for i, c in enumerate(q):
        out[i] = out[i] + c
    return _poly_trim(out)


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] = out[i + j] + a * b
    return _poly_trim(out)


def _poly_divmod(p, q):
    if not q:
        raise DivisionByZeroPolynomial("polynomial division by zero")
    p = p[:]
    quod = [ZERO] * max(0, len(p) - len(q) + 1)
    inv_lead = ONE / q[-1]
    while len(p) >= len(q):
        f = p[-1] * inv_lead
        d = len(p) - len(q)
        quod[d] = f
        for i, b in enumerate(q):
            p[d + i] = p[d + i] - f * b
        _poly_trim(p)
        if not p:
            break
    return _poly_trim(quod), p


def _poly_gcd(p, q):
    p, q = p[:], q[:]
    while q:
        _, r = _poly_divmod(p, q)
        p, q = q, r
    if p:
        inv_lead = ONE / p[-1]
        p = [c * inv_lead for c in p]
    return p


@dataclass
class _Laurent:
    """x^shift * (c_0 + c_1 x + ...), with c_0 != 0 unless zero."""

    shift: int
    coeffs: List[ExactComplex]

    @staticmethod
    def zero() -> "_Laurent":
        return _Laurent(0, [])

    @staticmethod
    def from_element(a: GroupAlgebraElement) -> "_Laurent":
        if a.is_zero():
            return _Laurent.zero()
        exps = {}
        for w, c in a.terms.items():
            exp = len(w) if all(l > 0 for l in w.letters) else -len(w)
            if w.is_identity():
                exp = 0
            exps[exp] = c
        lo, hi = min(exps), max(exps)
        return _Laurent(lo, _poly_trim([exps.get(k, ZERO) for k in range(lo, hi + 1)]))

    def to_element(self, gens: GeneratorSet) -> GroupAlgebraElement:
        terms = {}
        for k, c in enumerate(self.coeffs):
            if c:
                exp = self.shift + k
                w = ReducedWord(gens, (1,) * exp if exp >= 0 else (-1,) * (-exp))
                terms[w] = c
        return GroupAlgebraElement(gens, terms)

    def is_zero(self) -> bool:
        return not self.coeffs

    def normalized(self) -> "_Laurent":
        coeffs = self.coeffs[:]
        shift = self.shift
        drop = 0
        while drop < len(coeffs) and not coeffs[drop]:
            drop += 1
        return _Laurent(shift + drop, _poly_trim(coeffs[drop:])) if drop else _Laurent(shift, _poly_trim(coeffs))


def _laurent_mul(a: _Laurent, b: _Laurent) -> _Laurent:
    return _Laurent(a.shift + b.shift, _poly_mul(a.coeffs, b.coeffs)).normalized()


def _laurent_add(a: _Laurent, b: _Laurent) -> _Laurent:
    if a.is_zero():
        return b
    if b.is_zero():
        return a
    lo = min(a.shift, b.shift)
    pa = [ZERO] * (a.shift - lo) + a.coeffs
    pb = [ZERO] * (b.shift - lo) + b.coeffs
    return _Laurent(lo, _poly_add(pa, pb)).normalized()


@dataclass
class _Fraction1:
    num: _Laurent
    den: _Laurent

    def reduced(self) -> "_Fraction1":
        num, den = self.num.normalized(), self.den.normalized()
        if den.is_zero():
            raise DivisionByZeroPolynomial("zero denominator")
        if num.is_zero():
            return _Fraction1(_Laurent.zero(), _Laurent(0, [ONE]))
        g = _poly_gcd(num.coeffs, den.coeffs)
        if len(g) > 1:
            num = _Laurent(num.shift, _poly_divmod(num.coeffs, g)[0])
            den = _Laurent(den.shift, _poly_divmod(den.coeffs, g)[0])
        m = min(num.shift, den.shift)
        num = _Laurent(num.shift - m, num.coeffs)
        den = _Laurent(den.shift - m, den.coeffs)
        scale = ONE / den.coeffs[0]
        num = _Laurent(num.shift, [c * scale for c in num.coeffs])
        den = _Laurent(den.shift, [c * scale for c in den.coeffs])
        return _Fraction1(num, den)


def _fraction_of(e: Expression) -> _Fraction1:
    if isinstance(e, Leaf):
        return _Fraction1(_Laurent.from_element(e.element), _Laurent(0, [ONE])).reduced()
    if isinstance(e, Add):
        l, r = _fraction_of(e.left), _fraction_of(e.right)
        num = _laurent_add(_laurent_mul(l.num, r.den), _laurent_mul(r.num, l.den))
        return _Fraction1(num, _laurent_mul(l.den, r.den)).reduced()
    if isinstance(e, Neg):
        inner = _fraction_of(e.operand)
        return _Fraction1(_laurent_mul(_Laurent(0, [ExactComplex(-1)]), inner.num), inner.den).reduced()
    if isinstance(e, ScalarMul):
        inner = _fraction_of(e.operand)
        return _Fraction1(_laurent_mul(_Laurent(0, [e.scalar]), inner.num), inner.den).reduced()
    if isinstance(e, Mul):
        l, r = _fraction_of(e.left), _fraction_of(e.right)
        return _Fraction1(_laurent_mul(l.num, r.num), _laurent_mul(l.den, r.den)).reduced()
    if isinstance(e, Inv):
        inner = _fraction_of(e.operand)
        if inner.num.is_zero():
            raise DivisionByZeroPolynomial("inverse of the zero element")
        return _Fraction1(inner.den, inner.num).reduced()
    if isinstance(e, Adjoint):
        inner = _fraction_of(e.operand)

        def adj(l: _Laurent) -> _Laurent:
            coeffs = [c.conjugate() for c in reversed(l.coeffs)]
            return _Laurent(-(l.shift + len(l.coeffs) - 1), _poly_trim(coeffs)).normalized()

        return _Fraction1(adj(inner.num), adj(inner.den)).reduced()
    raise TypeError(f"unknown expression node {e!r}")


def quadruple_from_expression(e: Expression) -> Quadruple:
    """Over the infinite cyclic group, present the expression's value as
    (a, b, s, t) with a*t = s*b, denominators reduced by polynomial gcd."""
    gens = e.gens
    if gens.rank != 1:
        raise RankUnsupported("fraction synthesis needs a rank-1 group")
    frac = _fraction_of(e).reduced()
    a = frac.num.to_element(gens)
    s = frac.den.to_element(gens)
    return Quadruple(a, a, s, s)
