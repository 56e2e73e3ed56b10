"""Declarative run configuration.

Configs are YAML documents (a flat-sectioned key-value tree) validated
strictly: unknown keys are rejected, every constraint names the offending
key.  ``parse_config`` returns a fully resolved model with defaults
applied, so the config echoed into a report is self-contained.
"""

from __future__ import annotations

from typing import Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from . import algebra, analysis, findim, fuzzynorm
from .errors import ConfigError

SuiteName = Literal["axioms", "lemma1", "completeness", "compactness", "sequence", "bounded"]


class _Strict(BaseModel):
    model_config = ConfigDict(extra="forbid")


class PhiSection(_Strict):
    kind: Literal["abs", "abs-power", "rational-even"] = "abs-power"
    p: Optional[float] = None
    n: Optional[int] = None


class NormSection(_Strict):
    kind: Literal["rational", "exponential", "rational-power"] = "rational"
    p: float = 1.0
    exponent: Optional[float] = None
    K: Optional[float] = None
    tnorm: Optional[Literal["standard-intersection", "algebraic-product", "bounded-difference"]] = None
    base: Literal["l1", "l2", "l-infinity"] = "l2"
    dimension: int = Field(default=1, ge=1)
    phi: Optional[PhiSection] = None

    @model_validator(mode="after")
    def _constraints(self):
        if self.kind in ("rational", "exponential"):
            if not 0.0 < self.p <= 1.0:
                raise ValueError("p must lie in (0, 1] for the built-in norm kinds")
        if self.kind == "rational-power":
            if self.exponent is None or not self.exponent > 0:
                raise ValueError("rational-power requires a positive exponent")
        elif self.exponent is not None:
            raise ValueError("exponent is only meaningful for kind rational-power")
        if self.K is not None and not self.K >= 1.0:
            raise ValueError("K must be >= 1")
        return self


class SamplerSection(_Strict):
    seed: int = 0
    budget: int = Field(default=100_000, ge=1)
    coordinate_scale: float = Field(default=1.0, gt=0.0)


class AxiomsSection(_Strict):
    tolerance: float = Field(default=1e-9, gt=0.0)


class Lemma1Section(_Strict):
    basis: Optional[list[list[float]]] = None
    resolution: Optional[int] = Field(default=None, ge=8)
    c_grid: Optional[list[float]] = None
    refinement: int = Field(default=4, ge=1)
    alpha_sets: int = Field(default=10_000, ge=1)


class CompletenessSection(_Strict):
    trials: int = Field(default=100, ge=1)
    tol: float = Field(default=1e-6, gt=0.0, lt=1.0)
    horizon: int = Field(default=250, ge=10)
    basis: Optional[list[list[float]]] = None
    inject_divergent: bool = False


class SetSection(_Strict):
    kind: Literal["box", "finite-set", "unbounded-ray"]
    lo: Optional[list[float]] = None
    hi: Optional[list[float]] = None
    points: Optional[list[list[float]]] = None
    direction: Optional[list[float]] = None

    @model_validator(mode="after")
    def _constraints(self):
        if self.kind == "box" and (self.lo is None or self.hi is None):
            raise ValueError("box needs lo and hi")
        if self.kind == "finite-set" and not self.points:
            raise ValueError("finite-set needs points")
        if self.kind == "unbounded-ray" and self.direction is None:
            raise ValueError("unbounded-ray needs a direction")
        return self


class CompactnessSection(_Strict):
    set: SetSection
    sequences: int = Field(default=20, ge=1)
    horizon: int = Field(default=500, ge=10)


class GeneratorSection(_Strict):
    kind: Literal["geometric-approach", "explicit-list", "divergent-ray"]
    target: Optional[list[float]] = None
    direction: Optional[list[float]] = None
    ratio: Optional[float] = None
    points: Optional[list[list[float]]] = None
    horizon: int = Field(default=200, ge=2)


class SequenceSection(_Strict):
    generator: GeneratorSection
    candidate: Optional[list[float]] = None
    t_grid: list[float] = Field(default_factory=lambda: list(analysis.DEFAULT_T_GRID))
    tol: float = Field(default=1e-6, gt=0.0, lt=1.0)
    expect: Optional[Literal["converges", "cauchy", "not-cauchy"]] = None


class BoundedSection(_Strict):
    points: list[list[float]]
    r: float = Field(default=0.5, gt=0.0, lt=1.0)


class OutputSection(_Strict):
    format: Literal["text", "structured"] = "text"
    path: Optional[str] = None


class RunConfig(_Strict):
    norm: NormSection = Field(default_factory=NormSection)
    sampler: SamplerSection = Field(default_factory=SamplerSection)
    suites: list[SuiteName] = Field(default_factory=lambda: ["axioms"])
    axioms: AxiomsSection = Field(default_factory=AxiomsSection)
    lemma1: Lemma1Section = Field(default_factory=Lemma1Section)
    completeness: CompletenessSection = Field(default_factory=CompletenessSection)
    compactness: Optional[CompactnessSection] = None
    sequence: Optional[SequenceSection] = None
    bounded: Optional[BoundedSection] = None
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="after")
    def _suite_sections(self):
        if "sequence" in self.suites and self.sequence is None:
            raise ValueError("suite 'sequence' needs a sequence section declaring its generator")
        if "bounded" in self.suites and self.bounded is None:
            raise ValueError("suite 'bounded' needs a bounded section listing its points")
        return self


def resolved_config(config: RunConfig) -> RunConfig:
    """Fill the derived norm defaults (K, t-norm, phi) into the echo."""
    norm = config.norm
    updates: dict = {}
    if norm.K is None:
        updates["K"] = 2.0 ** norm.p if norm.kind in ("rational", "exponential") else 1.0
    if norm.tnorm is None:
        updates["tnorm"] = (
            "algebraic-product" if norm.kind == "exponential" else "standard-intersection"
        )
    if norm.phi is None:
        p = norm.exponent if norm.kind == "rational-power" else norm.p
        updates["phi"] = PhiSection(kind="abs-power", p=p)
    if updates:
        config = config.model_copy(update={"norm": norm.model_copy(update=updates)})
    lemma = config.lemma1
    lemma_updates: dict = {}
    if lemma.basis is None:
        lemma_updates["basis"] = [list(v) for v in findim.standard_basis(config.norm.dimension).vectors]
    if lemma.resolution is None:
        lemma_updates["resolution"] = findim.default_resolution(len(lemma_updates.get("basis") or lemma.basis))
    if lemma.c_grid is None:
        lemma_updates["c_grid"] = list(findim.DEFAULT_C_GRID)
    if lemma_updates:
        config = config.model_copy(update={"lemma1": lemma.model_copy(update=lemma_updates)})
    comp = config.completeness
    if comp.basis is None:
        config = config.model_copy(
            update={
                "completeness": comp.model_copy(
                    update={"basis": [list(v) for v in findim.standard_basis(config.norm.dimension).vectors]}
                )
            }
        )
    return config


def parse_config(text: str) -> RunConfig:
    """Parse and validate a YAML config document.

    Syntax errors carry the line/column of the failure; validation errors
    name the offending key and constraint.  Unknown keys are rejected.
    """
    try:
        raw = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        where = ""
        mark = getattr(exc, "problem_mark", None)
        if mark is not None:
            where = f" at line {mark.line + 1}, column {mark.column + 1}"
        raise ConfigError(f"config parse error{where}: {exc}") from exc
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ConfigError("config document must be a key-value mapping")
    try:
        config = RunConfig.model_validate(raw)
    except ValidationError as exc:
        lines = []
        for err in exc.errors():
            loc = ".".join(str(p) for p in err["loc"]) or "<root>"
            lines.append(f"{loc}: {err['msg']}")
        raise ConfigError("invalid config: " + "; ".join(lines)) from exc
    return resolved_config(config)


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_config(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path!r}: {exc}") from exc


# ---------------------------------------------------------------------------
# Materialisation into core objects
# ---------------------------------------------------------------------------


def build_phi(section: Optional[PhiSection], fallback_p: float) -> algebra.Phi:
    if section is None:
        return algebra.abs_power(fallback_p)
    if section.kind == "abs":
        return algebra.phi_abs()
    if section.kind == "abs-power":
        return algebra.abs_power(section.p if section.p is not None else fallback_p)
    return algebra.rational_even(section.n if section.n is not None else 1)


def build_tnorm(name: Optional[str], norm_kind: str) -> algebra.TNorm:
    if name is None:
        return fuzzynorm.default_tnorm_for("exponential" if norm_kind == "exponential" else "rational")
    return algebra.TNorm(name)


def build_norm(config: RunConfig) -> fuzzynorm.FuzzyNorm:
    section = config.norm
    base = fuzzynorm.CrispNorm(section.base)
    tnorm = build_tnorm(section.tnorm, section.kind)
    try:
        if section.kind == "rational-power":
            return fuzzynorm.rational_power_norm(
                section.exponent,
                K=section.K if section.K is not None else 1.0,
                base=base,
                tnorm=tnorm,
            )
        phi = build_phi(section.phi, section.p)
        return fuzzynorm.FuzzyNorm(
            kind=section.kind,
            p=section.p,
            K=section.K if section.K is not None else 2.0 ** section.p,
            phi=phi,
            tnorm=tnorm,
            base=base,
        )
    except Exception as exc:
        raise ConfigError(f"invalid norm section: {exc}") from exc


def build_sampler(config: RunConfig):
    from .verifier import SamplerConfig

    s = config.sampler
    return SamplerConfig(
        seed=s.seed,
        budget=s.budget,
        vector_dim=config.norm.dimension,
        coordinate_scale=s.coordinate_scale,
    )


def build_generator(section: GeneratorSection) -> analysis.SequenceGen:
    try:
        if section.kind == "geometric-approach":
            return analysis.geometric_approach(
                section.target, section.direction, section.ratio, horizon=section.horizon
            )
        if section.kind == "divergent-ray":
            return analysis.divergent_ray(section.direction, horizon=section.horizon)
        return analysis.explicit_list(section.points, horizon=min(section.horizon, len(section.points)))
    except Exception as exc:
        raise ConfigError(f"invalid sequence generator: {exc}") from exc


def build_set_spec(section: SetSection):
    try:
        if section.kind == "box":
            return findim.box_set(section.lo, section.hi)
        if section.kind == "finite-set":
            return findim.finite_set(section.points)
        return findim.unbounded_ray(section.direction)
    except Exception as exc:
        raise ConfigError(f"invalid set spec: {exc}") from exc


def build_basis(rows: Optional[list[list[float]]], dimension: int) -> findim.BasisSet:
    try:
        if rows is None:
            return findim.standard_basis(dimension)
        return findim.build_basis(rows)
    except Exception as exc:
        raise ConfigError(f"invalid basis: {exc}") from exc
