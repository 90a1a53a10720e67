"""Pydantic request/response models mirroring the JSON wire formats.

Rationals are [num, den] pairs and scalars [re_num, re_den, im_num, im_den]
quadruples; entries may be decimal integer strings or plain integers.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from pydantic import BaseModel, ConfigDict, Field, field_validator

IntStr = Union[int, str]
Rational = list[IntStr]
Quad = list[IntStr]


class AlgebraModel(BaseModel):
    p: int = Field(ge=0)
    q: int = Field(ge=0)
    r: int = Field(default=0, ge=0)
    field: Literal["R", "C"] = "R"


class MetricModel(BaseModel):
    p: int = Field(ge=0)
    q: int = Field(ge=0)


class MultivectorModel(BaseModel):
    blades: dict[str, Quad] = {}

    @field_validator("blades")
    @classmethod
    def _quads(cls, v):
        for key, quad in v.items():
            if len(quad) != 4:
                raise ValueError(f"blade {key!r}: coefficient must be a quadruple")
        return v


class CandidateModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    algebra: AlgebraModel
    metric: MetricModel
    lam: Rational = Field(alias="lambda")
    theta: Optional[Literal[1, -1]] = None
    kappa: Rational = ["1", "1"]
    A: list[MultivectorModel]


class WaveModel(BaseModel):
    k: list[str]
    coeffs: list[MultivectorModel]


class FieldModel(BaseModel):
    algebra: AlgebraModel
    metric: MetricModel
    waves: list[WaveModel] = []


# -- verify -------------------------------------------------------------------


class VerifyRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    candidate: CandidateModel
    lam: Optional[Rational] = Field(default=None, alias="lambda")
    tol: float = 0.0


class VerifyResponse(BaseModel):
    ok: bool
    max_residual_norm: float


# -- factory ------------------------------------------------------------------


class FactoryRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    cls: Literal[
        "anticommuting", "commuting", "grassmann", "extra_n3", "zero_subset"
    ] = Field(alias="class")
    signature: Optional[list[int]] = None
    field: Literal["R", "C"] = "R"
    theta: Optional[Literal[1, -1]] = None
    kappa: Rational = ["1", "1"]
    count: Optional[int] = None
    zero_indices: Optional[list[int]] = None
    candidate: Optional[CandidateModel] = None
    seeds: Optional[list[MultivectorModel]] = None


# -- solve --------------------------------------------------------------------


class SolveRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    signature: list[int]
    field: Literal["R", "C"] = "R"
    lam: Rational = Field(alias="lambda")
    restarts: int = Field(default=16, ge=1)
    seed: int = 0
    tol: float = 1e-10
    box: float = 2.0


class SolveReportModel(BaseModel):
    coordinates: list[float]
    residual_norm: float
    iterations: int
    restart_index: Optional[int] = None
    seed: Optional[int] = None
    rational_exact: bool = False


class SolveResponse(BaseModel):
    equations: int
    solutions: list[CandidateModel]
    reports: list[SolveReportModel]


# -- series -------------------------------------------------------------------


class SeriesRequest(BaseModel):
    base: CandidateModel
    order: int = Field(ge=0)
    support: list[list[str]] = []
    theta: Literal[1, -1]
    rho: IntStr = "1"
    order1: Optional[FieldModel] = None
    tol: float = 1e-9


class SeriesResponse(BaseModel):
    orders: list[FieldModel]
    q_norms: list[float]


# -- classify -----------------------------------------------------------------


class ClassifyRequest(BaseModel):
    candidate: CandidateModel


class ClassifyResponse(BaseModel):
    label: str
    mu: Optional[Quad] = None


# -- repr ---------------------------------------------------------------------


class ReprRequest(BaseModel):
    algebra: AlgebraModel


class ReprResponse(BaseModel):
    order: int
    images: list[list[list[Quad]]]
    target: Optional[AlgebraModel] = None


# -- conserve -----------------------------------------------------------------


class ConserveRequest(BaseModel):
    field: FieldModel
    rho: IntStr = "1"


class ConserveResponse(BaseModel):
    ok: bool
    defect_norm: float
