"""Suite orchestration: a resolved config in, a run report out.

Suites execute in their declared order; axiom checks inside the axioms
suite may fan out over a thread pool capped by the PHIB_THREADS
environment variable.  Reports are assembled in declaration order and
every check derives its own substream from the configured seed, so the
structured output is byte-identical across worker counts.
"""

from __future__ import annotations

import os
import time
from typing import Optional

from . import analysis, findim, verifier
from .analysis import BOUNDED_DEVIATION_NOTE, check_cauchy, check_convergence, check_fuzzy_bounded
from .config import (
    RunConfig,
    build_basis,
    build_generator,
    build_norm,
    build_sampler,
    build_set_spec,
)
from .errors import CertificateError, ConfigError, DomainError
from .reporting import CheckReportModel, RunReport, SuiteResult, VERSION
from .reports import make_report


def workers_from_env(default: Optional[int] = None) -> Optional[int]:
    """Worker cap from PHIB_THREADS; invalid or missing values fall back."""
    raw = os.environ.get("PHIB_THREADS", "").strip()
    if raw:
        try:
            value = int(raw)
            if value >= 1:
                return value
        except ValueError:
            pass
    return default if default is not None else min(4, os.cpu_count() or 1)


def _axioms_suite(norm, sampler, config: RunConfig, strict: bool, workers) -> SuiteResult:
    reports = verifier.run_full_suite(
        norm,
        sampler,
        tolerance=config.axioms.tolerance,
        continuity="strict" if strict else "warn",
        workers=workers,
    )
    return SuiteResult(
        suite="axioms",
        passed=verifier.aggregate_passed(reports),
        reports=[CheckReportModel.from_core(r) for r in reports],
    )


def _lemma1_suite(norm, config: RunConfig) -> SuiteResult:
    section = config.lemma1
    basis = build_basis(section.basis, config.norm.dimension)
    try:
        estimate = findim.estimate_lemma1_constants(
            norm, basis, grid_resolution=section.resolution, c_grid=section.c_grid
        )
    except DomainError as exc:
        raise ConfigError(f"lemma1 suite: {exc}") from exc
    except CertificateError as exc:
        failed = make_report("lemma1-certificate", 0, -1.0, 1e-9, notes=(str(exc),))
        return SuiteResult(suite="lemma1", passed=False, reports=[CheckReportModel.from_core(failed)])
    certificate = findim.verify_lemma1_certificate(
        norm,
        basis,
        estimate,
        refinement=section.refinement,
        alpha_sets=section.alpha_sets,
        seed=config.sampler.seed,
    )
    return SuiteResult(
        suite="lemma1",
        passed=certificate.passed,
        reports=[CheckReportModel.from_core(certificate)],
        data={
            "c": estimate.c,
            "delta": estimate.delta,
            "max_membership": estimate.max_membership,
            "worst_beta": list(estimate.worst_beta),
            "grid_resolution": estimate.grid_resolution,
        },
    )


def _completeness_suite(norm, config: RunConfig) -> SuiteResult:
    section = config.completeness
    basis = build_basis(section.basis, config.norm.dimension)
    try:
        report = findim.probe_completeness(
            norm,
            basis,
            trials=section.trials,
            seed=config.sampler.seed,
            tol=section.tol,
            horizon=section.horizon,
            inject_divergent=section.inject_divergent,
        )
    except DomainError as exc:
        raise ConfigError(f"completeness suite: {exc}") from exc
    return SuiteResult(
        suite="completeness",
        passed=report.passed,
        reports=[CheckReportModel.from_core(report)],
    )


def _compactness_suite(norm, config: RunConfig) -> SuiteResult:
    if config.compactness is None:
        box = findim.box_set([0.0] * config.norm.dimension, [1.0] * config.norm.dimension)
        report = findim.probe_compactness(norm, box, seed=config.sampler.seed)
    else:
        section = config.compactness
        spec = build_set_spec(section.set)
        report = findim.probe_compactness(
            norm,
            spec,
            sequence_samples=section.sequences,
            seed=config.sampler.seed,
            horizon=section.horizon,
        )
    return SuiteResult(
        suite="compactness",
        passed=report.passed,
        reports=[CheckReportModel.from_core(report)],
    )


def _sequence_suite(norm, config: RunConfig) -> SuiteResult:
    section = config.sequence
    generator = build_generator(section.generator)
    try:
        if section.candidate is not None:
            verdict = check_convergence(
                norm, generator, section.candidate, t_grid=section.t_grid, tol=section.tol
            )
        else:
            verdict = check_cauchy(norm, generator, t_grid=section.t_grid, tol=section.tol)
    except DomainError as exc:
        raise ConfigError(f"sequence suite: {exc}") from exc
    expect = section.expect or ("converges" if section.candidate is not None else "cauchy")
    expected_verdicts = {
        "converges": (analysis.CONVERGES,),
        "cauchy": (analysis.CONVERGES, analysis.CAUCHY_ONLY),
        "not-cauchy": (analysis.NOT_CAUCHY,),
    }[expect]
    passed = verdict.verdict in expected_verdicts
    report = make_report(
        "sequence-verdict",
        verdict.horizon,
        0.0 if passed else -1.0,
        0.0,
        notes=(f"expected {expect}, observed {verdict.verdict}",) if not passed else (),
        details=verdict.as_dict(),
    )
    return SuiteResult(
        suite="sequence",
        passed=passed,
        reports=[CheckReportModel.from_core(report)],
        data={"expected": expect, "verdict": verdict.verdict},
    )


def _bounded_suite(norm, config: RunConfig) -> SuiteResult:
    section = config.bounded
    bounded, witness_t = check_fuzzy_bounded(norm, section.points, section.r)
    report = make_report(
        "bounded-probe",
        len(section.points),
        0.0 if bounded else -1.0,
        0.0,
        notes=(BOUNDED_DEVIATION_NOTE,),
        details={"r": section.r, "witness_t": witness_t},
    )
    return SuiteResult(
        suite="bounded",
        passed=bounded,
        reports=[CheckReportModel.from_core(report)],
        data={"witness_t": witness_t},
    )


def run(
    config: RunConfig,
    strict_tnorm_continuity: bool = False,
    workers: Optional[int] = None,
) -> RunReport:
    """Execute the declared suites and assemble the run report.

    Construction problems (bad norm parameters, uncertified basis, missing
    sections) raise ConfigError before any sampling; mathematical failures
    are report contents.
    """
    started = time.perf_counter()
    try:
        norm = build_norm(config)
        sampler = build_sampler(config)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc
    if workers is None:
        workers = workers_from_env()

    suites: list[SuiteResult] = []
    for name in config.suites:
        if name == "axioms":
            suites.append(_axioms_suite(norm, sampler, config, strict_tnorm_continuity, workers))
        elif name == "lemma1":
            suites.append(_lemma1_suite(norm, config))
        elif name == "completeness":
            suites.append(_completeness_suite(norm, config))
        elif name == "compactness":
            suites.append(_compactness_suite(norm, config))
        elif name == "sequence":
            suites.append(_sequence_suite(norm, config))
        elif name == "bounded":
            suites.append(_bounded_suite(norm, config))
        else:  # pragma: no cover - guarded by config validation
            raise ConfigError(f"unknown suite {name!r}")

    aggregate = "pass" if all(s.passed for s in suites) else "fail"
    return RunReport(
        version=VERSION,
        seed=config.sampler.seed,
        aggregate=aggregate,
        wall_time_s=time.perf_counter() - started,
        config=config,
        suites=suites,
    )
