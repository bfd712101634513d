"""Pydantic request/response schemas for the service endpoints.

Large integers (counts, criterion sides) are serialized as decimal strings
to survive JSON round trips; the ``*_int`` accessor names keep the exact
values available in process.
"""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class Meta(BaseModel):
    version: str
    seed: int = 0
    modulus_policy: str
    budget: int


class ClassifyRequest(BaseModel):
    q: int = Field(ge=2)
    n: int = Field(ge=1)
    factor_budget: Optional[float] = None


class ClassifyResponse(BaseModel):
    q: int
    n: int
    regular: bool
    reason: Optional[dict] = None  # populated when not regular
    exceptional_divisors: Optional[list[int]] = None
    completely_basic: Optional[bool] = None
    omega: Optional[int] = None
    Omega: Optional[int] = None
    Omega_eps: Optional[int] = None
    Omega_c: Optional[int] = None
    criterion_76_holds: Optional[bool] = None
    weak_criterion_holds: Optional[bool] = None
    cn_count: Optional[str] = None  # decimal string, may be huge
    meta: Meta


class CriterionRequest(BaseModel):
    q: int = Field(ge=2)
    n: int = Field(ge=1)
    allow_any_regular: bool = False
    factor_budget: Optional[float] = None


class CriterionResponse(BaseModel):
    q: int
    n: int
    holds: bool
    omega: int
    Omega: int
    Omega_eps: int
    Omega_c: int
    lhs: Optional[str]  # q^{n/2} when n even
    rhs: str  # (2^omega - 1)(2^{Omega_c} - 1)
    two_power: str  # 2^{omega + Omega_c}
    q_n: str
    weak_holds: Optional[bool] = None
    weak_lhs: Optional[str] = None
    meta: Meta


class ScanRequest(BaseModel):
    q_max: int = Field(ge=2)
    n_max: int = Field(ge=1)
    q_min: int = 2
    n_min: int = 1
    n_mod: Optional[int] = None
    q_mod4: Optional[int] = 3
    factor_budget: Optional[float] = 60.0
    threads: int = 1


class ScanRow(BaseModel):
    q: int
    n: int
    regular: bool
    decided_by: str
    criterion_holds: bool
    weak_holds: Optional[bool] = None
    omega: Optional[int] = None
    Omega_c: Optional[int] = None


class ScanResponse(BaseModel):
    rows: list[ScanRow]
    failures: list[tuple[int, int]]
    meta: Meta


class CountRequest(BaseModel):
    q: int = Field(ge=2)
    n: int = Field(ge=1)


class CountResponse(BaseModel):
    q: int
    n: int
    cn_count: str
    meta: Meta


class CensusRequest(BaseModel):
    q: int = Field(ge=2)
    n: int = Field(ge=1)
    budget: Optional[int] = None
    expensive: bool = False
    modulus: Optional[str] = None
    threads: int = 1


class CensusResponse(BaseModel):
    q: int
    n: int
    formula: str
    per_module: dict[int, str]
    per_module_product: str
    per_module_match: bool
    lattice_counts: dict[str, dict[str, int]] = Field(default_factory=dict)
    exhaustive: Optional[str] = None  # full-field census when within budget
    match: Optional[bool] = None
    meta: Meta


class VerifyRequest(BaseModel):
    p: int = Field(ge=2)
    poly: str
    base_q: Optional[int] = None


class VerifyResponse(BaseModel):
    p: int
    poly: str
    pcn: bool
    meta: Meta


class SearchRequest(BaseModel):
    q: int = Field(ge=2)
    n: int = Field(ge=1)
    strategy: str = "exhaustive"
    seed: int = 0
    budget: Optional[int] = None
    modulus: Optional[str] = None
    threads: int = 1


class SearchResponse(BaseModel):
    q: int
    n: int
    certificate: dict
    meta: Meta


class RecheckRequest(BaseModel):
    certificate: dict


class RecheckResponse(BaseModel):
    valid: bool
    meta: Meta


class CharsVerifyRequest(BaseModel):
    q: int = Field(ge=2)
    n: int = Field(ge=1)
    modulus: Optional[str] = None
    seed: int = 0


class CharsVerifyResponse(BaseModel):
    q: int
    n: int
    checks: dict[str, bool]
    max_orthogonality_deviation: float
    meta: Meta


class ErrorResponse(BaseModel):
    error: str
    message: str
