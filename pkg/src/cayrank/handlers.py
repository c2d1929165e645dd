"""Request-model to response-model handlers: the single implementation the
HTTP endpoints and the CLI subcommands both call."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from . import criterion, rational
from .algebra import StarConvention, ga_one
from .criterion import (
    CriterionReport,
    Quadruple,
    SeriesStream,
    check_criterion,
    classify,
    family_stream,
    hankel_rank_profile,
    hankel_stabilized,
    stream_from_element,
    stream_from_json,
    windowed_profile,
)
from .errors import ConfigError
from .fredholm import DefectMatrix
from .parsing import parse_element, parse_expression
from .scalars import ExactComplex
from .schemas import (
    CommutatorRankRequest,
    CommutatorRankResponse,
    CriterionReportModel,
    DefectMatrixModel,
    ExpandRequest,
    ExpandResponse,
    HankelRequest,
    HankelResponse,
    ProfileCell,
    ProfileRequest,
    ProfileResponse,
    QuadrupleRequest,
    QuadrupleResponse,
    VerdictModel,
)
from .words import GeneratorSet, parse_group_spec

# ball sizes beyond this would make a windowed profile explode in memory
_PROFILE_ENTRY_CAP = 250_000


def _matrix_model(m: DefectMatrix) -> DefectMatrixModel:
    d = m.to_json_dict()
    return DefectMatrixModel(
        rows=d["rows"],
        cols=d["cols"],
        entries=[[(re, im) for re, im in row] for row in d["entries"]],
    )


def _report_model(
    report: CriterionReport, gens: GeneratorSet, include_matrices: bool
) -> CriterionReportModel:
    return CriterionReportModel(
        group=gens.spec(),
        star_convention=report.convention.value,
        identity_holds=report.identity_holds,
        rank_p=report.rank_p,
        rank_p_inv=report.rank_p_inv,
        rank_f=report.rank_f,
        witnesses_p=report.witnesses_p,
        witnesses_p_inv=report.witnesses_p_inv,
        boundary_certified=report.boundary_certified,
        matrix_p=_matrix_model(report.matrix_p) if include_matrices else None,
        matrix_p_inv=_matrix_model(report.matrix_p_inv) if include_matrices else None,
    )


def handle_commutator_rank(req: CommutatorRankRequest) -> CommutatorRankResponse:
    gens = parse_group_spec(req.group)
    convention = StarConvention.parse(req.star_convention)
    alpha = parse_element(gens, req.element)
    one = ga_one(gens)
    q = Quadruple(alpha, alpha, one, one)
    report = check_criterion(q, convention)
    return CommutatorRankResponse(
        element=req.element.strip(),
        commutator_rank=report.rank_p,
        report=_report_model(report, gens, req.include_matrices),
    )


def handle_check_quadruple(req: QuadrupleRequest) -> QuadrupleResponse:
    gens = parse_group_spec(req.group)
    convention = StarConvention.parse(req.star_convention)
    q = Quadruple(
        parse_element(gens, req.a),
        parse_element(gens, req.b),
        parse_element(gens, req.s),
        parse_element(gens, req.t),
    )
    report = check_criterion(q, convention)
    return QuadrupleResponse(passed=True, report=_report_model(report, gens, req.include_matrices))


def resolve_stream(req: ProfileRequest, gens: GeneratorSet) -> SeriesStream:
    if req.series_json is not None:
        return stream_from_json(req.series_json, gens, name=req.series or "json")
    spec = req.series.strip()
    if spec.startswith("expr:"):
        expr = parse_expression(gens, spec[len("expr:"):])
        return rational.stream_from_expression(expr, 2 * req.window + 1, name=spec)
    if spec.startswith("finite:"):
        return stream_from_element(parse_element(gens, spec[len("finite:"):]), name=spec)
    return family_stream(spec, gens)


def _ball_size(rank: int, radius: int) -> int:
    if rank == 1:
        return 2 * radius + 1
    total, sphere = 1, 1
    for _ in range(radius):
        sphere = sphere * (2 * rank - 1) if sphere > 1 else 2 * rank
        total += sphere
    return total


def handle_profile(req: ProfileRequest) -> ProfileResponse:
    gens = parse_group_spec(req.group)
    if req.window < 1:
        raise ConfigError("window must be >= 1")
    size = _ball_size(gens.rank, req.window)
    if size * size > _PROFILE_ENTRY_CAP:
        raise ConfigError(
            f"window {req.window} over {gens.spec()} needs {size * size} matrix "
            f"entries; cap is {_PROFILE_ENTRY_CAP}"
        )
    stream = resolve_stream(req, gens)
    verdict = classify(stream, req.window, req.plateau)
    table: Optional[list] = None
    if req.full_table:
        profile = windowed_profile(stream, req.window, req.window)
        table = [
            ProfileCell(j=j, k=k, rank=profile.rank_at(j, k))
            for j in range(1, req.window + 1)
            for k in range(1, req.window + 1)
        ]
    return ProfileResponse(
        group=gens.spec(),
        series=stream.name,
        window=req.window,
        plateau=req.plateau,
        diagonal=verdict.diagonal,
        table=table,
        verdict=VerdictModel(
            kind=verdict.kind,
            rank=verdict.rank,
            increments=verdict.increments,
            window=verdict.window,
            plateau=verdict.plateau,
            diagonal=verdict.diagonal,
        ),
    )


def handle_hankel(req: HankelRequest) -> HankelResponse:
    if req.order < 1:
        raise ConfigError("order must be >= 1")
    if req.coefficients is not None:
        coeffs = [ExactComplex(Fraction(re), Fraction(im)) for re, im in req.coefficients]
    elif req.family:
        coeffs = criterion.family_sequence(req.family, 2 * req.order - 1)
    else:
        raise ConfigError("need either a family name or explicit coefficients")
    ranks = hankel_rank_profile(coeffs, req.order)
    plateau = min(req.plateau, len(ranks))
    return HankelResponse(
        order=req.order,
        ranks=ranks,
        stabilized=hankel_stabilized(ranks, plateau),
        plateau=plateau,
    )


def handle_expand(req: ExpandRequest) -> ExpandResponse:
    gens = parse_group_spec(req.group)
    expr = parse_expression(gens, req.expr)
    if req.mode == "numeric":
        trunc = rational.expand_numeric(expr, Fraction(req.tolerance))
    else:
        if req.radius < 0:
            raise ConfigError("radius must be >= 0")
        trunc = rational.expand_exact(expr, req.radius)
    d = trunc.to_json_dict()
    return ExpandResponse(
        expr=req.expr.strip(),
        radius=d["radius"],
        exactness=d["exactness"],
        coefficients=[
            {"word": c["word"], "re": str(c["re"]), "im": str(c["im"])}
            for c in d["coefficients"]
        ],
        tail_bound=d.get("tail_bound"),
    )
