"""Command-line front end.

Each subcommand is a thin client over the same runner the HTTP service
uses: it loads the YAML config (or defaults), applies flag overrides,
forces the matching suite, and renders the report.  Exit codes: 0 when
the aggregate verdict passes, 1 when any suite fails, 2 on config or
usage errors.
"""

from __future__ import annotations

import sys
from typing import Optional

import click

from .config import RunConfig, load_config, resolved_config
from .errors import ConfigError
from .reporting import parse_report, render_report
from .runner import run, workers_from_env


def _load(config_path: Optional[str]) -> RunConfig:
    if config_path is None:
        return resolved_config(RunConfig())
    return load_config(config_path)


def _apply_overrides(config: RunConfig, seed, budget, fmt, output) -> RunConfig:
    sampler_updates = {}
    if seed is not None:
        sampler_updates["seed"] = seed
    if budget is not None:
        sampler_updates["budget"] = budget
    updates = {}
    if sampler_updates:
        updates["sampler"] = config.sampler.model_copy(update=sampler_updates)
    out_updates = {}
    if fmt is not None:
        out_updates["format"] = fmt
    if output is not None:
        out_updates["path"] = output
    if out_updates:
        updates["output"] = config.output.model_copy(update=out_updates)
    return config.model_copy(update=updates) if updates else config


def _common_options(fn):
    fn = click.option("--config", "config_path", type=click.Path(), default=None, help="YAML config file.")(fn)
    fn = click.option("--seed", type=int, default=None, help="Override the sampler seed.")(fn)
    fn = click.option("--budget", type=int, default=None, help="Override the per-axiom sample budget.")(fn)
    fn = click.option("--output", type=click.Path(), default=None, help="Write the rendered report here.")(fn)
    fn = click.option("--format", "fmt", type=click.Choice(["text", "structured"]), default=None,
                      help="Report format (default from config).")(fn)
    fn = click.option("--strict-tnorm-continuity", is_flag=True, default=False,
                      help="Gate the axiom suite on t-norm continuity at (1,1) instead of warning.")(fn)
    return fn


def _execute(suite: str, config_path, seed, budget, output, fmt, strict) -> None:
    try:
        config = _load(config_path)
        config = _apply_overrides(config, seed, budget, fmt, output)
        config = config.model_copy(update={"suites": [suite]})
        config = RunConfig.model_validate(config.model_dump())  # re-validate suite sections
        report = run(config, strict_tnorm_continuity=strict, workers=workers_from_env())
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    _emit(report, config)
    sys.exit(0 if report.passed else 1)


def _emit(report, config: RunConfig) -> None:
    document = render_report(report, config.output.format)
    if config.output.path:
        try:
            with open(config.output.path, "w", encoding="utf-8") as fh:
                fh.write(document)
        except OSError as exc:
            click.echo(f"cannot write report: {exc}", err=True)
            sys.exit(2)
        click.echo(f"report written to {config.output.path}")
    else:
        click.echo(document, nl=False)


@click.group()
def main() -> None:
    """Construct fuzzy strong phi-b-norms and verify their axioms."""


@main.command()
@_common_options
def verify(config_path, seed, budget, output, fmt, strict_tnorm_continuity) -> None:
    """Run the full axiom suite (bN1-bN5 plus t-norm and phi checks)."""
    _execute("axioms", config_path, seed, budget, output, fmt, strict_tnorm_continuity)


@main.command()
@_common_options
def lemma1(config_path, seed, budget, output, fmt, strict_tnorm_continuity) -> None:
    """Estimate and re-verify the separation constants (c, delta) on the
    l1 coefficient sphere of a basis."""
    _execute("lemma1", config_path, seed, budget, output, fmt, strict_tnorm_continuity)


@main.command()
@_common_options
def complete(config_path, seed, budget, output, fmt, strict_tnorm_continuity) -> None:
    """Probe completeness: constructed Cauchy sequences must be traced
    back to their limits."""
    _execute("completeness", config_path, seed, budget, output, fmt, strict_tnorm_continuity)


@main.command()
@_common_options
def compact(config_path, seed, budget, output, fmt, strict_tnorm_continuity) -> None:
    """Probe compactness of a box, finite set or unbounded ray."""
    _execute("compactness", config_path, seed, budget, output, fmt, strict_tnorm_continuity)


@main.command()
@_common_options
def sequence(config_path, seed, budget, output, fmt, strict_tnorm_continuity) -> None:
    """Judge convergence or the Cauchy property of a declared sequence."""
    _execute("sequence", config_path, seed, budget, output, fmt, strict_tnorm_continuity)


@main.command()
@_common_options
def bounded(config_path, seed, budget, output, fmt, strict_tnorm_continuity) -> None:
    """Search a boundedness witness t for a declared point set."""
    _execute("bounded", config_path, seed, budget, output, fmt, strict_tnorm_continuity)


@main.command()
@click.argument("stored", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(["text", "structured"]), default="text")
@click.option("--output", type=click.Path(), default=None)
def report(stored, fmt, output) -> None:
    """Re-render a stored structured report."""
    try:
        with open(stored, "r", encoding="utf-8") as fh:
            parsed = parse_report(fh.read())
    except (OSError, ConfigError) as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    document = render_report(parsed, fmt)
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(document)
        click.echo(f"report written to {output}")
    else:
        click.echo(document, nl=False)
    sys.exit(0 if parsed.passed else 1)


if __name__ == "__main__":
    main()
