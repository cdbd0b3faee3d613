"""FastAPI service wrapping the engine.

One engine (and so one growing memo table) lives for the lifetime of the
application, shared across requests and threads; that is the point of running
this as a service.  Error contract: every handled failure returns JSON
``{"detail": {"code": ..., "message": ...}}`` with code ``argument``,
``resource`` or ``cache``; clients map those to exit codes.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..cachefile import CacheError, export_cache, import_cache
from ..engine import ALL, IRREDUCIBLE, ResourceLimitError, SeveriEngine, SeveriKey
from ..gw import GwQuery, Insertion, divisor, expected_points, fundamental, gw_invariant, point
from ..seqcomb import TangencySeq, ZERO, e
from ..surface import DivClass, SurfaceModel
from ..verify import run_suite
from . import models as mdl


def _parse_target(surface: str, class_spec, degree, basis) -> tuple[SurfaceModel, DivClass]:
    model = SurfaceModel.from_name(surface)
    if degree is not None and class_spec is not None:
        raise ValueError("give either a class or a degree, not both")
    if degree is not None:
        if not model.is_plane:
            raise ValueError("--degree applies to the plane model only")
        d = DivClass(degree)
    elif class_spec is not None:
        d = model.parse_class(class_spec, basis)
    else:
        raise ValueError("a divisor class is required")
    return model, d


def _record(model: SurfaceModel, d: DivClass, g: int, alpha, beta, variant, value) -> mdl.OutputRecord:
    return mdl.OutputRecord(
        surface=model.name(),
        class_sf=model.format_class(d),
        class_ef=None if model.is_plane else model.format_class(d, "ef"),
        genus=g,
        alpha=alpha.text(),
        beta=beta.text(),
        variant=variant,
        value=str(value),
    )


def _default_beta(model: SurfaceModel, d: DivClass, alpha: TangencySeq) -> TangencySeq:
    left = model.dot_e(d) - alpha.weight()
    return left * e(1) if left > 0 else ZERO


def table_rows(engine: SeveriEngine, model: SurfaceModel, d: DivClass,
               g_min: int, g_max: int, threads: int = 1, **opts) -> list[tuple[int, int, int]]:
    """(genus, total, irreducible) for every genus in the range, cells optionally
    computed in parallel against the shared memo table."""
    cells = [(g, variant) for g in range(g_min, g_max + 1) for variant in (ALL, IRREDUCIBLE)]

    def cell(args):
        g, variant = args
        return engine.count_class(model, d, g, variant, **opts)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(cell, cells))
    else:
        values = [cell(c) for c in cells]
    out = []
    for i, g in enumerate(range(g_min, g_max + 1)):
        out.append((g, values[2 * i], values[2 * i + 1]))
    return out


def default_genus_range(model: SurfaceModel, d: DivClass) -> tuple[int, int]:
    """Component floor up to the arithmetic genus: the rows the class can populate."""
    g_min = 1 - (d.a if model.is_plane else d.a + d.b)
    return g_min, model.arithmetic_genus(d)


def create_app(engine: SeveriEngine | None = None) -> FastAPI:
    app = FastAPI(title="severi", version=__version__)
    app.state.engine = engine if engine is not None else SeveriEngine()

    def fail(code: str, exc: Exception) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": {"code": code, "message": str(exc)}},
        )

    @app.exception_handler(ValueError)
    async def _value_error(_req: Request, exc: ValueError):
        return fail("argument", exc)

    @app.exception_handler(ResourceLimitError)
    async def _resource_error(_req: Request, exc: ResourceLimitError):
        return fail("resource", exc)

    @app.exception_handler(CacheError)
    async def _cache_error(_req: Request, exc: CacheError):
        return fail("cache", exc)

    def meta(t0: float) -> mdl.Meta:
        stats = app.state.engine.stats()
        return mdl.Meta(
            elapsed_ms=(time.perf_counter() - t0) * 1000.0,
            memo_entries=stats["entries"],
            memo_hits=stats["hits"],
        )

    @app.get("/v1/health", response_model=mdl.HealthResponse)
    def health():
        return mdl.HealthResponse(status="ok", version=__version__)

    @app.post("/v1/compute", response_model=mdl.ComputeResponse)
    def compute(req: mdl.ComputeRequest):
        t0 = time.perf_counter()
        engine: SeveriEngine = app.state.engine
        model, d = _parse_target(req.surface, req.class_spec, req.degree, req.basis)
        alpha = TangencySeq.parse(req.alpha)
        beta = _default_beta(model, d, alpha) if req.beta is None else TangencySeq.parse(req.beta)
        key = SeveriKey(model, d, req.genus, alpha, beta, req.variant)
        value = engine.count(key, prune_genus=req.options.prune_genus,
                             max_upsilon=req.options.max_upsilon)
        return mdl.ComputeResponse(
            record=_record(model, d, req.genus, alpha, beta, req.variant, value),
            meta=meta(t0),
        )

    @app.post("/v1/table", response_model=mdl.TableResponse)
    def table(req: mdl.TableRequest):
        t0 = time.perf_counter()
        engine: SeveriEngine = app.state.engine
        model, d = _parse_target(req.surface, req.class_spec, req.degree, req.basis)
        if not model.is_effective(d):
            raise ValueError(f"{model.format_class(d)} is not effective on {model.name()}")
        lo, hi = default_genus_range(model, d)
        g_min = lo if req.genus_min is None else req.genus_min
        g_max = hi if req.genus_max is None else req.genus_max
        if req.threads < 1:
            raise ValueError("threads must be >= 1")
        rows = table_rows(engine, model, d, g_min, g_max, threads=req.threads,
                          prune_genus=req.options.prune_genus,
                          max_upsilon=req.options.max_upsilon)
        return mdl.TableResponse(
            surface=model.name(),
            class_sf=model.format_class(d),
            class_ef=None if model.is_plane else model.format_class(d, "ef"),
            rows=[mdl.TableRow(genus=g, total=str(t), irreducible=str(i)) for g, t, i in rows],
            meta=meta(t0),
        )

    @app.post("/v1/gw", response_model=mdl.GwResponse)
    def gw(req: mdl.GwRequest):
        t0 = time.perf_counter()
        engine: SeveriEngine = app.state.engine
        if req.n < 0:
            raise ValueError("n must be >= 0")
        d_ef = _parse_ef(req.class_spec)
        inserts: list[Insertion] = []
        for ins in req.insertions:
            if ins.kind == "divisor":
                if ins.divisor is None:
                    raise ValueError("divisor insertions need a class")
                inserts.append(divisor(*_parse_ef(ins.divisor)))
            elif ins.kind == "point":
                inserts.append(point())
            else:
                inserts.append(fundamental())
        if req.points == "auto":
            n_pts = max(expected_points(req.n, d_ef, req.genus), 0)
        else:
            if req.points < 0:
                raise ValueError("point count must be >= 0")
            n_pts = req.points
        inserts.extend(point() for _ in range(n_pts))
        query = GwQuery(req.n, d_ef, req.genus, tuple(inserts))
        value = gw_invariant(engine, query)
        text = str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"
        return mdl.GwResponse(
            record=mdl.GwRecord(
                n=req.n,
                class_ef=f"{d_ef[0]}E+{d_ef[1]}F",
                genus=req.genus,
                points=n_pts,
                value=text,
            ),
            meta=meta(t0),
        )

    @app.post("/v1/verify", response_model=mdl.VerifyResponse)
    def verify_endpoint(req: mdl.VerifyRequest):
        t0 = time.perf_counter()
        engine: SeveriEngine = app.state.engine
        reports = run_suite(engine, req.suite, req.grid)
        out = []
        for rep in reports:
            out.append(mdl.CheckReportModel(
                name=rep.name,
                passed=rep.passed,
                checked=len(rep.instances),
                failures=[
                    mdl.CheckInstanceModel(description=f.description, lhs=str(f.lhs),
                                           rhs=str(f.rhs), ok=False)
                    for f in rep.failures
                ],
            ))
        return mdl.VerifyResponse(
            suite=req.suite,
            passed=all(r.passed for r in out),
            reports=out,
            meta=meta(t0),
        )

    @app.post("/v1/cache/export", response_model=mdl.CacheExportResponse)
    def cache_export(req: mdl.CacheExportRequest):
        model = SurfaceModel.from_name(req.surface)
        return mdl.CacheExportResponse(
            surface=model.name(),
            text=export_cache(app.state.engine, model),
        )

    @app.post("/v1/cache/import", response_model=mdl.CacheImportResponse)
    def cache_import(req: mdl.CacheImportRequest):
        model, loaded = import_cache(app.state.engine, req.text)
        return mdl.CacheImportResponse(surface=model.name(), loaded=loaded)

    @app.get("/v1/cache/stat", response_model=mdl.CacheStatResponse)
    def cache_stat():
        engine: SeveriEngine = app.state.engine
        by_surface: dict[str, int] = {}
        for key, _ in engine.memo_items():
            name = key.model.name()
            by_surface[name] = by_surface.get(name, 0) + 1
        stats = engine.stats()
        return mdl.CacheStatResponse(
            entries=stats["entries"],
            hits=stats["hits"],
            computes=stats["computes"],
            by_surface=dict(sorted(by_surface.items())),
        )

    return app


def _parse_ef(text: str) -> tuple[int, int]:
    """(E, F) coordinates from ``a,b`` or ``aE+bF``."""
    text = text.strip().replace(" ", "")
    if "," in text:
        a, b = text.split(",")
        return int(a), int(b)
    from ..surface import _parse_symbolic

    coeffs = _parse_symbolic(text)
    bad = set(coeffs) - {"E", "F"}
    if bad:
        raise ValueError(f"gw classes use the (E, F) basis, got letters {sorted(bad)}")
    return coeffs.get("E", 0), coeffs.get("F", 0)
