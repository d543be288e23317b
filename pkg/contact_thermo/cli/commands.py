"""
Command-line interface for contact-thermo.

This module implements the CLI using Click: running experiment files,
batches of them, the self-test suite and listing bundled experiments.

Exit codes: 0 success, 2 configuration error, 3 step failure, 4 law-audit
failure under --strict (or a failed self-test), 1 unexpected error, 130
keyboard interrupt.
"""

import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Dict, List, Optional, Tuple

import click

from .. import __version__
from ..core.config import ExperimentConfig, load_experiment
from ..core.exceptions import ConfigurationError, ContactThermoError, FileSystemError
from ..experiments import bundled_experiments, resolve_experiment
from ..utils.logging_config import get_logger, log_exception, setup_logging
from .output import summary_text
from .runner import (
    EXIT_AUDIT,
    EXIT_CONFIG,
    EXIT_ERROR,
    EXIT_INTERRUPTED,
    EXIT_OK,
    RunResult,
    run_experiment,
)
from .selftest import FAULTS, run_selftest

logger = get_logger(__name__)

LEVELS = {0: "WARNING", 1: "INFO"}


def _load_one(config_ref: str) -> Tuple[Optional[ExperimentConfig], str]:
    """Load one experiment; returns (config, error message)."""
    try:
        return load_experiment(resolve_experiment(config_ref)), ""
    except ConfigurationError as e:
        return None, f"Configuration error: {e}"


def _execute(
    config: ExperimentConfig, out: Path, strict: bool, seed: Optional[int]
) -> Tuple[int, Optional[RunResult], str]:
    """Run a loaded experiment; returns (exit code, result, error message)."""
    try:
        result = run_experiment(config, out, seed=seed)
    except ConfigurationError as e:
        return EXIT_CONFIG, None, f"Configuration error: {e}"
    except FileSystemError as e:
        return EXIT_ERROR, None, f"Cannot write artifacts: {e}"
    except ContactThermoError as e:
        return EXIT_ERROR, None, f"Error: {e}"
    return result.exit_code(strict), result, ""


def _run_one(
    config_ref: str, out: Path, strict: bool, seed: Optional[int]
) -> Tuple[int, Optional[RunResult], str]:
    """Run one experiment; returns (exit code, result, error message)."""
    config, error = _load_one(config_ref)
    if config is None:
        return EXIT_CONFIG, None, error
    return _execute(config, out, strict, seed)


def _shared_prefixes(
    loaded: List[Tuple[str, ExperimentConfig]]
) -> Dict[str, List[str]]:
    """Artifact prefixes claimed by more than one experiment."""
    owners: Dict[str, List[str]] = {}
    for ref, config in loaded:
        owners.setdefault(config.prefix, []).append(ref)
    return {prefix: refs for prefix, refs in owners.items() if len(refs) > 1}


# ============================================================================
# Main CLI Group
# ============================================================================


@click.group()
@click.option(
    "--verbose",
    "-v",
    count=True,
    help="Increase verbosity (-v for INFO, -vv for DEBUG)",
)
@click.option(
    "--log-file",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Also write a rotating DEBUG log to this file",
)
@click.version_option(version=__version__, prog_name="contact-thermo")
@click.pass_context
def cli(ctx, verbose: int, log_file: Optional[Path]):
    """
    contact-thermo - structure-preserving integrators for isolated
    thermodynamic systems.

    \b
    Examples:
        contact-thermo list
        contact-thermo run --config fig1_dho --out results
        contact-thermo run --config my_experiment.yaml --strict
        contact-thermo batch fig1_dho fig3_particles --jobs 2 --out results
        contact-thermo selftest --seed 7
    """
    ctx.ensure_object(dict)
    setup_logging(
        log_level=LEVELS.get(verbose, "DEBUG"),
        log_file=log_file,
        file_output=log_file is not None,
    )
    ctx.obj["verbose"] = verbose


# ============================================================================
# Run Command
# ============================================================================


@cli.command()
@click.option(
    "--config",
    "config_ref",
    required=True,
    help="Experiment YAML file or bundled experiment name",
)
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("results"),
    show_default=True,
    help="Directory for the CSV, JSON and summary artifacts",
)
@click.option("--strict", is_flag=True, help="Exit with 4 if a law audit fails")
@click.option("--seed", type=int, default=None, help="Override the configured seed")
def run(config_ref: str, out: Path, strict: bool, seed: Optional[int]):
    """
    Run one experiment and write its artifacts.

    \b
    Examples:
        contact-thermo run --config fig1_dho
        contact-thermo run --config fig5_herglotz --out /tmp/herglotz --strict
    """
    code, result, error = _run_one(config_ref, out, strict, seed)
    if result is None:
        click.secho(error, fg="red", err=True)
        sys.exit(code)

    click.echo(summary_text(result.report), nl=False)
    click.echo(f"\nArtifacts written to {out}")
    if code == EXIT_AUDIT:
        click.secho("Law audit failed (--strict)", fg="red", err=True)
    elif code != EXIT_OK:
        click.secho("Simulation stopped early", fg="red", err=True)
    sys.exit(code)


# ============================================================================
# Batch Command
# ============================================================================


@cli.command()
@click.argument("configs", nargs=-1, required=True)
@click.option(
    "--out",
    type=click.Path(file_okay=False, path_type=Path),
    default=Path("results"),
    show_default=True,
    help="Directory for all artifacts",
)
@click.option(
    "--jobs",
    "-j",
    type=click.IntRange(min=1),
    default=1,
    show_default=True,
    help="Experiments to run concurrently",
)
@click.option("--strict", is_flag=True, help="Count law-audit failures as errors")
def batch(configs: Tuple[str, ...], out: Path, jobs: int, strict: bool):
    """
    Run several independent experiments.

    The exit code is the highest code of the individual runs. Experiments
    that would write the same artifact files are rejected with exit code 2
    before anything runs.

    \b
    Examples:
        contact-thermo batch fig1_dho fig3_particles fig5_herglotz
        contact-thermo batch a.yaml b.yaml --jobs 2 --strict
    """
    loaded = [(ref, *_load_one(ref)) for ref in configs]
    clashes = _shared_prefixes([(ref, c) for ref, c, _ in loaded if c is not None])
    if clashes:
        for prefix, refs in clashes.items():
            click.secho(
                f"Artifact prefix '{prefix}' is shared by: {', '.join(refs)}",
                fg="red",
                err=True,
            )
        sys.exit(EXIT_CONFIG)

    def execute(item: Tuple[str, Optional[ExperimentConfig], str]):
        _, config, error = item
        if config is None:
            return EXIT_CONFIG, None, error
        return _execute(config, out, strict, None)

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        outcomes = list(pool.map(execute, loaded))

    worst = EXIT_OK
    for ref, (code, result, error) in zip(configs, outcomes):
        worst = max(worst, code)
        if result is None:
            click.secho(f"✗ {ref}: {error}", fg="red")
            continue
        laws = result.laws
        status = "✓" if code == EXIT_OK else "✗"
        color = "green" if code == EXIT_OK else "red"
        click.secho(
            f"{status} {result.config.name}: {result.trajectory.n_steps} steps, "
            f"energy drift {laws.max_energy_drift:.3e}, "
            f"min dS {laws.min_entropy_increment:.3e}",
            fg=color,
        )
    sys.exit(worst)


# ============================================================================
# Selftest Command
# ============================================================================


@cli.command()
@click.option("--seed", type=int, default=0, show_default=True, help="Random seed")
@click.option(
    "--samples",
    type=click.IntRange(min=1),
    default=1000,
    show_default=True,
    help="Random samples per check",
)
@click.option(
    "--inject-fault",
    "faults",
    multiple=True,
    type=click.Choice(list(FAULTS)),
    help="Corrupt a structure on purpose to exercise the checks",
)
@click.option("--json", "as_json", is_flag=True, help="Print the report as JSON")
def selftest(seed: int, samples: int, faults: Tuple[str, ...], as_json: bool):
    """
    Check the structural identities at random samples.

    \b
    Examples:
        contact-thermo selftest
        contact-thermo selftest --seed 3 --samples 200
        contact-thermo selftest --inject-fault skew
    """
    report = run_selftest(seed=seed, samples=samples, faults=faults)
    if as_json:
        click.echo(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        for check in report.checks:
            status = "PASS" if check.passed else "FAIL"
            color = "green" if check.passed else "red"
            line = (
                f"{status}  {check.name:<30} max error {check.max_error:.3e} "
                f"(tolerance {check.tolerance:.1e})"
            )
            if check.detail and not check.passed:
                line += f"  {check.detail}"
            click.secho(line, fg=color)

    if not report.passed:
        names = ", ".join(c.name for c in report.failed)
        click.secho(f"Self-test failed: {names}", fg="red", err=True)
        sys.exit(EXIT_AUDIT)
    sys.exit(EXIT_OK)


# ============================================================================
# List Command
# ============================================================================


@cli.command(name="list")
@click.option(
    "--format",
    "-f",
    "fmt",
    type=click.Choice(["table", "list", "json"], case_sensitive=False),
    default="table",
    help="Output format (default: table)",
)
def list_experiments(fmt: str):
    """
    List the bundled experiments.

    \b
    Examples:
        contact-thermo list
        contact-thermo list --format json
    """
    entries = {}
    for name, path in bundled_experiments().items():
        try:
            config = load_experiment(path)
            entries[name] = {
                "path": str(path),
                "model": config.model_name,
                "method": config.method,
                "description": config.description,
            }
        except ConfigurationError as e:
            click.secho(f"Skipping {name}: {e.message}", fg="yellow", err=True)

    if fmt == "json":
        click.echo(json.dumps(entries, indent=2, sort_keys=True))
    elif fmt == "list":
        for name in entries:
            click.echo(name)
    else:
        click.echo(f"{'Experiment':<18} {'Model':<18} {'Method':<14} Description")
        click.echo("-" * 78)
        for name, info in entries.items():
            click.echo(
                f"{name:<18} {info['model']:<18} {info['method']:<14} "
                f"{info['description']}"
            )


def main():
    """Main entry point for CLI."""
    try:
        cli(obj={})
    except KeyboardInterrupt:
        click.echo("\nOperation cancelled by user", err=True)
        sys.exit(EXIT_INTERRUPTED)
    except Exception as e:
        log_exception(logger, e, "Unexpected error")
        click.secho(f"Unexpected error: {e}", fg="red", err=True)
        sys.exit(EXIT_ERROR)


if __name__ == "__main__":
    main()
