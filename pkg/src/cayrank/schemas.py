"""Pydantic request/response models shared by the HTTP service and the CLI.

All exact values are serialized as strings of rationals ("p/q"); numeric-mode
expansions carry floats plus the certified tail bound."""

from __future__ import annotations

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field

StarConventionName = Literal["zero", "unital"]
OutputFormat = Literal["text", "json"]


class DefectMatrixModel(BaseModel):
    rows: List[str]
    cols: List[str]
    entries: List[List[Tuple[str, str]]]


class CriterionReportModel(BaseModel):
    group: str
    star_convention: StarConventionName
    identity_holds: bool
    rank_p: int
    rank_p_inv: int
    rank_f: int
    witnesses_p: List[str]
    witnesses_p_inv: List[str]
    boundary_certified: bool
    matrix_p: Optional[DefectMatrixModel] = None
    matrix_p_inv: Optional[DefectMatrixModel] = None


class CommutatorRankRequest(BaseModel):
    group: str = "F(x)"
    element: str
    star_convention: StarConventionName = "zero"
    include_matrices: bool = False


class CommutatorRankResponse(BaseModel):
    element: str
    commutator_rank: int
    report: CriterionReportModel


class QuadrupleRequest(BaseModel):
    group: str = "F(x)"
    a: str
    b: str
    s: str
    t: str
    star_convention: StarConventionName = "zero"
    include_matrices: bool = False


class QuadrupleResponse(BaseModel):
    passed: bool
    report: CriterionReportModel


class ProfileRequest(BaseModel):
    group: str = "F(x)"
    series: str = Field(description="family name, finite:<expr>, or expr:<expression>")
    series_json: Optional[Dict] = None
    window: int = 10
    plateau: int = 4
    full_table: bool = True


class ProfileCell(BaseModel):
    j: int
    k: int
    rank: int


class VerdictModel(BaseModel):
    kind: Literal["STABILIZED", "GROWING"]
    rank: Optional[int] = None
    increments: Optional[List[int]] = None
    window: int
    plateau: int
    diagonal: List[int]


class ProfileResponse(BaseModel):
    group: str
    series: str
    window: int
    plateau: int
    diagonal: List[int]
    table: Optional[List[ProfileCell]] = None
    verdict: VerdictModel


class HankelRequest(BaseModel):
    family: Optional[str] = None
    coefficients: Optional[List[Tuple[str, str]]] = None
    order: int = 6
    plateau: int = 4


class HankelResponse(BaseModel):
    order: int
    ranks: List[int]
    stabilized: bool
    plateau: int


class ExpandRequest(BaseModel):
    group: str = "F(x)"
    expr: str
    radius: int = 6
    mode: Literal["exact", "numeric"] = "exact"
    tolerance: str = "1/1000000"


class CoefficientModel(BaseModel):
    word: str
    re: str
    im: str


class ExpandResponse(BaseModel):
    expr: str
    radius: int
    exactness: str
    coefficients: List[CoefficientModel]
    tail_bound: Optional[float] = None


class ErrorDetail(BaseModel):
    code: str
    message: str


class ErrorResponse(BaseModel):
    error: ErrorDetail
