"""Request/response schemas for the compute service.

Counts grow super-exponentially, so every value crosses the wire as a decimal
string, never as a native JSON number.  Metadata (timings, memo statistics)
lives in a separate object from the data records so that identical queries
produce byte-identical records.
"""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

SCHEMA_VERSION = "severi.v1"


class EngineOptions(BaseModel):
    prune_genus: bool = True
    max_upsilon: Optional[int] = None


class Meta(BaseModel):
    elapsed_ms: float
    memo_entries: int
    memo_hits: int


class OutputRecord(BaseModel):
    schema_version: str = SCHEMA_VERSION
    surface: str
    class_sf: str
    class_ef: Optional[str] = None  # Hirzebruch only
    genus: int
    alpha: str
    beta: str
    variant: Literal["all", "irr"]
    value: str


class ComputeRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    surface: str
    class_spec: Optional[str] = Field(default=None, alias="class")
    degree: Optional[int] = None  # plane shorthand
    basis: Literal["sf", "ef"] = "sf"
    genus: int
    alpha: str = ""
    beta: Optional[str] = None  # default: all remaining contacts transverse
    variant: Literal["all", "irr"] = "all"
    options: EngineOptions = EngineOptions()


class ComputeResponse(BaseModel):
    record: OutputRecord
    meta: Meta


class TableRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    surface: str
    class_spec: Optional[str] = Field(default=None, alias="class")
    degree: Optional[int] = None
    basis: Literal["sf", "ef"] = "sf"
    genus_min: Optional[int] = None
    genus_max: Optional[int] = None
    threads: int = 1
    options: EngineOptions = EngineOptions()


class TableRow(BaseModel):
    genus: int
    total: str
    irreducible: str


class TableResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    surface: str
    class_sf: str
    class_ef: Optional[str] = None
    rows: list[TableRow]
    meta: Meta


class GwInsertion(BaseModel):
    kind: Literal["fundamental", "divisor", "point"]
    divisor: Optional[str] = None  # "a,b" in (E, F) coordinates


class GwRequest(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    n: int
    class_spec: str = Field(alias="class")  # (E, F) coordinates
    genus: int
    points: int | Literal["auto"] = "auto"
    insertions: list[GwInsertion] = []
    options: EngineOptions = EngineOptions()


class GwRecord(BaseModel):
    schema_version: str = SCHEMA_VERSION
    n: int
    class_ef: str
    genus: int
    points: int
    value: str  # integer, or p/q for the one rational case


class GwResponse(BaseModel):
    record: GwRecord
    meta: Meta


class VerifyRequest(BaseModel):
    suite: Literal["all", "exp", "ab", "2skf", "plane"] = "all"
    grid: dict[str, int] = {}
    options: EngineOptions = EngineOptions()


class CheckInstanceModel(BaseModel):
    description: str
    lhs: str
    rhs: str
    ok: bool


class CheckReportModel(BaseModel):
    name: str
    passed: bool
    checked: int
    failures: list[CheckInstanceModel]


class VerifyResponse(BaseModel):
    schema_version: str = SCHEMA_VERSION
    suite: str
    passed: bool
    reports: list[CheckReportModel]
    meta: Meta


class CacheExportRequest(BaseModel):
    surface: str


class CacheExportResponse(BaseModel):
    surface: str
    text: str


class CacheImportRequest(BaseModel):
    text: str


class CacheImportResponse(BaseModel):
    surface: str
    loaded: int


class CacheStatResponse(BaseModel):
    entries: int
    hits: int
    computes: int
    by_surface: dict[str, int]


class HealthResponse(BaseModel):
    status: str
    version: str
