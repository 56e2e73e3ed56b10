"""FastAPI service wrapping the verification runner.

One endpoint per CLI subcommand plus a free-form /run that honours the
suites declared in the submitted config.  Mathematical failures stay in
the report body (HTTP 200 with aggregate "fail"); config errors map to
422.  Run with: uvicorn phibnorm.service.app:app
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException

from ..config import RunConfig
from ..errors import ConfigError
from ..reporting import VERSION, RunReport, render_report
from ..runner import run, workers_from_env
from .schemas import HealthResponse, RenderedDocument, RenderRequest, RunRequest, VersionResponse

app = FastAPI(
    title="phibnorm service",
    description="Numerical verification of fuzzy strong phi-b-normed linear spaces.",
    version=VERSION,
)

_SUITES = ("axioms", "lemma1", "completeness", "compactness", "sequence", "bounded")


def _run_with(request: RunRequest, suite: str | None = None) -> RunReport:
    config = request.config
    if suite is not None:
        try:
            config = RunConfig.model_validate({**config.model_dump(), "suites": [suite]})
        except Exception as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
    try:
        return run(config, strict_tnorm_continuity=request.strict_tnorm_continuity,
                   workers=workers_from_env())
    except ConfigError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse()


@app.get("/version", response_model=VersionResponse)
def version() -> VersionResponse:
    return VersionResponse(tool="phibnorm", version=VERSION, suites=list(_SUITES),
                           workers=workers_from_env())


@app.post("/run", response_model=RunReport)
def run_declared_suites(request: RunRequest) -> RunReport:
    """Execute the suites declared in the submitted config, in order."""
    return _run_with(request)


@app.post("/verify", response_model=RunReport)
def verify(request: RunRequest) -> RunReport:
    return _run_with(request, "axioms")


@app.post("/lemma1", response_model=RunReport)
def lemma1(request: RunRequest) -> RunReport:
    return _run_with(request, "lemma1")


@app.post("/complete", response_model=RunReport)
def complete(request: RunRequest) -> RunReport:
    return _run_with(request, "completeness")


@app.post("/compact", response_model=RunReport)
def compact(request: RunRequest) -> RunReport:
    return _run_with(request, "compactness")


@app.post("/sequence", response_model=RunReport)
def sequence(request: RunRequest) -> RunReport:
    return _run_with(request, "sequence")


@app.post("/bounded", response_model=RunReport)
def bounded(request: RunRequest) -> RunReport:
    return _run_with(request, "bounded")


@app.post("/report/render", response_model=RenderedDocument)
def render(request: RenderRequest) -> RenderedDocument:
    return RenderedDocument(document=render_report(request.report, request.format))
