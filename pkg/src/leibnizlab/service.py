"""HTTP service wrapping the library; all computation stays in the core modules.

Every endpoint handler here is a pure function from a request model to a
response model, so the CLI can call the same handlers in-process, and the
FastAPI app is a thin routing shell around them.

Error mapping: ParseError -> 422, DomainError (a computation that cannot be
carried out for the given input) -> 400.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import catalog, files
from .algebra import (
    check_leibniz,
    central_series,
    derivation_dim,
    is_lie,
    is_nilpotent,
    orbit_dim,
    right_center,
    two_sided_center,
)
from .classify import Classification, ClassificationError, classify
from .deform import (
    ContractionPoleError,
    MonotonicityReport,
    SingularFamilyError,
    check_contraction_monotonicity,
    contract,
    perturb,
)
from .graphs import build_degeneration_graph, emit_dot
from .invariants import characteristic_sequence


class DomainError(Exception):
    """The requested computation is undefined or failed for this input."""


class LawPayload(BaseModel):
    source: str
    bindings: dict[str, str] = Field(default_factory=dict)


class ViolationModel(BaseModel):
    i: int
    j: int
    k: int
    m: int


class CheckResponse(BaseModel):
    leibniz_ok: bool
    violations: list[ViolationModel]


class InvariantsResponse(BaseModel):
    dim: int
    field: str
    lie: bool
    nilpotent: bool
    central_dims: list[int]
    right_center_dim: int
    two_sided_center_dim: int
    char_seq: list[int] | None
    char_witness: list[str] | None
    derivation_dim: int
    orbit_dim: int


class ClassifyResponse(BaseModel):
    label: str
    tag: str
    b: str | None
    certificate: list[list[str]]
    representative: str


class MonotonicityModel(BaseModel):
    source_orbit_dim: int
    target_orbit_dim: int
    source_right_center_dim: int
    target_right_center_dim: int
    source_char_seq: list[int] | None
    target_char_seq: list[int] | None
    orbit_ok: bool
    right_center_ok: bool
    char_seq_ok: bool
    passed: bool


class ContractRequest(BaseModel):
    law: LawPayload
    family_source: str | None = None
    catalog_family: str | None = None


class ContractResponse(BaseModel):
    ok: bool
    pole: str | None
    result: str | None
    monotonicity: MonotonicityModel | None


class PerturbRequest(BaseModel):
    law: LawPayload
    direction_name: str | None = None
    direction_source: str | None = None


class PerturbResponse(BaseModel):
    law: str
    leibniz_ok: bool
    violations: list[ViolationModel]
    nilpotent: bool
    classification: ClassifyResponse | None
    classification_error: str | None


class GraphRequest(BaseModel):
    catalog: str = "leibn3"
    exponent_bound: int = 2


class GraphResponse(BaseModel):
    dot: str


class CatalogEntryModel(BaseModel):
    name: str
    kind: str
    dim: int | None
    params: list[str]
    summary: str


class CatalogResponse(BaseModel):
    entries: list[CatalogEntryModel]


def _load_law(payload: LawPayload):
    return files.parse_algebra(payload.source, payload.bindings)


def _violations(report) -> list[ViolationModel]:
    return [ViolationModel(i=i, j=j, k=k, m=m) for i, j, k, m in report.violations]


def handle_check(payload: LawPayload) -> CheckResponse:
    law = _load_law(payload)
    report = check_leibniz(law)
    return CheckResponse(leibniz_ok=report.ok, violations=_violations(report))


def handle_invariants(payload: LawPayload) -> InvariantsResponse:
    law = _load_law(payload)
    if not check_leibniz(law).ok:
        raise DomainError("invariants are defined for Leibniz laws only; run check")
    series = central_series(law)
    nilpotent = series[-1].dim == 0
    char_seq = witness = None
    if nilpotent and law.dim:
        seq, wit = characteristic_sequence(law)
        char_seq = list(seq.parts)
        witness = [str(c) for c in wit]
    return InvariantsResponse(
        dim=law.dim,
        field=str(law.field),
        lie=is_lie(law),
        nilpotent=nilpotent,
        central_dims=[s.dim for s in series],
        right_center_dim=right_center(law).dim,
        two_sided_center_dim=two_sided_center(law).dim,
        char_seq=char_seq,
        char_witness=witness,
        derivation_dim=derivation_dim(law),
        orbit_dim=orbit_dim(law),
    )


def _classification_model(result: Classification) -> ClassifyResponse:
    return ClassifyResponse(
        label=str(result.label),
        tag=result.label.tag,
        b=None if result.label.b is None else str(result.label.b),
        certificate=[[str(x) for x in row] for row in result.certificate],
        representative=files.format_law(result.representative),
    )


def handle_classify(payload: LawPayload) -> ClassifyResponse:
    law = _load_law(payload)
    try:
        return _classification_model(classify(law))
    except (ValueError, ClassificationError) as exc:
        raise DomainError(str(exc)) from exc


def _monotonicity_model(report: MonotonicityReport) -> MonotonicityModel:
    return MonotonicityModel(
        source_orbit_dim=report.source_orbit_dim,
        target_orbit_dim=report.target_orbit_dim,
        source_right_center_dim=report.source_right_center_dim,
        target_right_center_dim=report.target_right_center_dim,
        source_char_seq=(
            None if report.source_char_seq is None else list(report.source_char_seq.parts)
        ),
        target_char_seq=(
            None if report.target_char_seq is None else list(report.target_char_seq.parts)
        ),
        orbit_ok=report.orbit_ok,
        right_center_ok=report.right_center_ok,
        char_seq_ok=report.char_seq_ok,
        passed=report.passed,
    )


def handle_contract(request: ContractRequest) -> ContractResponse:
    law = _load_law(request.law)
    if (request.family_source is None) == (request.catalog_family is None):
        raise DomainError("provide exactly one of family_source or catalog_family")
    if request.catalog_family is not None:
        try:
            family = catalog.make_family(request.catalog_family)
        except KeyError as exc:
            raise DomainError(str(exc)) from exc
    else:
        family = files.parse_family(request.family_source)
    if law.dim != family.dim:
        raise DomainError("family dimension does not match the law")
    try:
        result = contract(law, family)
    except ContractionPoleError as exc:
        return ContractResponse(ok=False, pole=str(exc), result=None, monotonicity=None)
    except (SingularFamilyError, ArithmeticError) as exc:
        raise DomainError(str(exc)) from exc
    try:
        report = check_contraction_monotonicity(law, result)
        mono = _monotonicity_model(report)
    except ValueError as exc:
        raise DomainError(str(exc)) from exc
    return ContractResponse(
        ok=True, pole=None, result=files.format_law(result), monotonicity=mono
    )


def handle_perturb(request: PerturbRequest) -> PerturbResponse:
    law = _load_law(request.law)
    if (request.direction_name is None) == (request.direction_source is None):
        raise DomainError("provide exactly one of direction_name or direction_source")
    if request.direction_name is not None:
        try:
            direction = catalog.perturbation_direction(request.direction_name)
        except KeyError as exc:
            raise DomainError(str(exc)) from exc
    else:
        direction = files.parse_algebra(request.direction_source)
    if direction.dim != law.dim:
        raise DomainError("direction dimension does not match the law")
    perturbed = perturb(law, direction)
    report = check_leibniz(perturbed)
    nilpotent = is_nilpotent(perturbed)
    classification = classification_error = None
    if report.ok and nilpotent and perturbed.dim in (2, 3):
        try:
            classification = _classification_model(classify(perturbed))
        except (ValueError, ClassificationError) as exc:
            classification_error = str(exc)
    return PerturbResponse(
        law=files.format_law(perturbed),
        leibniz_ok=report.ok,
        violations=_violations(report),
        nilpotent=nilpotent,
        classification=classification,
        classification_error=classification_error,
    )


def handle_graph(request: GraphRequest) -> GraphResponse:
    if request.catalog != "leibn3":
        raise DomainError(f"unknown graph catalog {request.catalog!r}")
    graph = build_degeneration_graph(request.exponent_bound)
    try:
        return GraphResponse(dot=emit_dot(graph))
    except ArithmeticError as exc:
        raise DomainError(str(exc)) from exc


def handle_catalog() -> CatalogResponse:
    return CatalogResponse(
        entries=[
            CatalogEntryModel(
                name=e.name,
                kind=e.kind,
                dim=e.dim,
                params=list(e.params),
                summary=e.summary,
            )
            for e in catalog.entries()
        ]
    )


app = FastAPI(
    title="leibnizlab",
    description="Exact computations with complex Leibniz algebra laws",
)


@app.exception_handler(files.ParseError)
async def _parse_error_handler(request: Request, exc: files.ParseError):
    return JSONResponse(status_code=422, content={"detail": str(exc)})


@app.exception_handler(DomainError)
async def _domain_error_handler(request: Request, exc: DomainError):
    return JSONResponse(status_code=400, content={"detail": str(exc)})


@app.get("/health")
def health() -> dict:
    return {"status": "ok"}


@app.post("/check", response_model=CheckResponse)
def check_endpoint(payload: LawPayload) -> CheckResponse:
    return handle_check(payload)


@app.post("/invariants", response_model=InvariantsResponse)
def invariants_endpoint(payload: LawPayload) -> InvariantsResponse:
    return handle_invariants(payload)


@app.post("/classify", response_model=ClassifyResponse)
def classify_endpoint(payload: LawPayload) -> ClassifyResponse:
    return handle_classify(payload)


@app.post("/contract", response_model=ContractResponse)
def contract_endpoint(request: ContractRequest) -> ContractResponse:
    return handle_contract(request)


@app.post("/perturb", response_model=PerturbResponse)
def perturb_endpoint(request: PerturbRequest) -> PerturbResponse:
    return handle_perturb(request)


@app.post("/graph", response_model=GraphResponse)
def graph_endpoint(request: GraphRequest) -> GraphResponse:
    return handle_graph(request)


@app.get("/catalog", response_model=CatalogResponse)
def catalog_endpoint() -> CatalogResponse:
    return handle_catalog()
