"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from ..config import RunConfig
from ..reporting import RunReport


class RunRequest(BaseModel):
    """A run request: the same document the CLI reads from YAML, plus the
    continuity-gate switch."""

    model_config = ConfigDict(extra="forbid")

    config: RunConfig = Field(default_factory=RunConfig)
    strict_tnorm_continuity: bool = False


class RenderRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    report: RunReport
    format: Literal["text", "structured"] = "text"


class RenderedDocument(BaseModel):
    document: str


class HealthResponse(BaseModel):
    status: Literal["ok"] = "ok"


class VersionResponse(BaseModel):
    tool: str
    version: str
    suites: list[str]
    workers: Optional[int] = None
