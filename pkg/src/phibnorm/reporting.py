"""Run reports: assembly, rendering, parsing.

The structured format is canonical JSON (UTF-8, sorted keys, two-space
indent); floats serialise through repr, which round-trips exactly, so
``parse_report(render_report(r, "structured")) == r``.  The text format is
stable-ordered and diff-friendly.  ``report_fingerprint`` is the rendered
document with the wall-time removed, the unit of comparison for the
determinism contract and the golden files.
"""

from __future__ import annotations

import json
from typing import Any, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from .config import RunConfig
from .errors import ConfigError
from .reports import CheckReport

VERSION = "0.1.0"


class CounterExampleModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    variables: dict[str, Any]
    lhs: float
    rhs: float
    part: str = ""


class CheckReportModel(BaseModel):
    model_config = ConfigDict(extra="forbid")

    axiom_id: str
    verdict: Literal["pass", "fail"]
    samples_run: int
    worst_margin: float
    tolerance: float
    counterexample: Optional[CounterExampleModel] = None
    notes: list[str] = Field(default_factory=list)
    details: dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    @classmethod
    def from_core(cls, report: CheckReport) -> "CheckReportModel":
        return cls.model_validate(report.as_dict())


class SuiteResult(BaseModel):
    model_config = ConfigDict(extra="forbid")

    suite: str
    passed: bool
    reports: list[CheckReportModel] = Field(default_factory=list)
    data: dict[str, Any] = Field(default_factory=dict)


class RunReport(BaseModel):
    model_config = ConfigDict(extra="forbid")

    tool: str = "phibnorm"
    version: str = VERSION
    seed: int = 0
    aggregate: Literal["pass", "fail"] = "pass"
    wall_time_s: float = 0.0
    config: RunConfig = Field(default_factory=RunConfig)
    suites: list[SuiteResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.aggregate == "pass"


def _canonical_json(payload: dict) -> str:
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def render_report(report: RunReport, format: str = "text") -> str:
    """Render a report; structured output is canonical JSON, text output is
    one stable line per check with failures carrying their witness."""
    if format == "structured":
        return _canonical_json(report.model_dump(mode="json"))
    if format != "text":
        raise ConfigError(f"unknown report format {format!r}")

    lines = [
        f"phibnorm {report.version} run report",
        f"seed={report.seed} aggregate={report.aggregate.upper()} wall_time_s={report.wall_time_s:.3f}",
    ]
    for suite in report.suites:
        lines.append(f"suite {suite.suite}: {'PASS' if suite.passed else 'FAIL'}")
        for check in suite.reports:
            lines.append(
                f"  {check.axiom_id:<22} {check.verdict.upper():<4} "
                f"worst_margin={check.worst_margin!r} samples={check.samples_run}"
            )
            for note in check.notes:
                lines.append(f"      note: {note}")
            if check.counterexample is not None:
                ce = check.counterexample
                vars_text = " ".join(f"{k}={v!r}" for k, v in ce.variables.items())
                lines.append(
                    f"      witness[{ce.part}] {vars_text} lhs={ce.lhs!r} rhs={ce.rhs!r}"
                )
        for key in sorted(suite.data):
            lines.append(f"  data {key}={suite.data[key]!r}")
    return "\n".join(lines) + "\n"


def parse_report(text: str) -> RunReport:
    """Parse a structured report document back into a RunReport."""
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"report parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc
    try:
        return RunReport.model_validate(payload)
    except ValidationError as exc:
        raise ConfigError(f"invalid report document: {exc}") from exc


def report_fingerprint(report: RunReport) -> str:
    """Canonical serialisation with volatile fields (wall time) removed."""
    payload = report.model_dump(mode="json")
    payload.pop("wall_time_s", None)
    return _canonical_json(payload)
