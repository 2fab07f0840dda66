"""
Command-line interface for sipmark.

Results go to stdout as ``key=value`` lines; failures go to stderr as one
``error=<stage>:<detail>`` line. Exit codes: 0 success, 1 validation failure,
2 usage error, 3 I/O error.
"""

import logging
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Optional

import typer

from .config import configure_logging
from .errors import SipmarkError
from .graph_io import export_dot, read_graph, write_graph
from .models import TamperOutcomeKind, Variant
from .toolkit import WatermarkToolkit

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_IO = 3

# typer may raise from its own bundled click; take the bases from there.
_click_exceptions = sys.modules[typer.BadParameter.__module__]
ClickException = _click_exceptions.ClickException
UsageError = _click_exceptions.UsageError

app = typer.Typer(
    name="sipmark",
    help="Embed integer watermarks into reducible permutation flow-graphs and extract them again.",
    add_completion=False,
    no_args_is_help=True,
)


def _single_line(text: str) -> str:
    return " ".join(str(text).split())


def _usage(message: str) -> None:
    typer.echo(f"error=usage:{_single_line(message)}", err=True)
    raise typer.Exit(EXIT_USAGE)


@contextmanager
def _reporting_errors():
    """Turn domain and I/O exceptions into an error line and an exit code."""
    try:
        yield
    except SipmarkError as e:
        logger.debug("command failed", exc_info=True)
        typer.echo(e.to_line(), err=True)
        raise typer.Exit(EXIT_VALIDATION)
    except OSError as e:
        logger.debug("I/O failure", exc_info=True)
        target = f"{e.filename}: " if e.filename else ""
        typer.echo(f"error=io:{_single_line(target + (e.strerror or str(e)))}", err=True)
        raise typer.Exit(EXIT_IO)


def _pick(positional, option, name: str):
    if positional is not None and option is not None and positional != option:
        _usage(f"{name} given twice with different values ({positional} and {option})")
    return positional if positional is not None else option


def _parse_variant(value: Optional[str], allow_auto: bool, default: Variant) -> Variant:
    if value is None:
        return default
    try:
        variant = Variant(value.lower())
    except ValueError:
        variant = None
    if variant is None or (variant is Variant.AUTO and not allow_auto):
        choices = "f1, f2, auto" if allow_auto else "f1, f2"
        _usage(f"unknown variant {value!r}, expected one of {choices}")
    return variant


def _tuple(values: Iterable[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _yes_no(flag: bool) -> str:
    return "yes" if flag else "no"


def _emit(**pairs) -> None:
    for key, value in pairs.items():
        if value is not None:
            typer.echo(f"{key}={value}")


@app.callback()
def main_callback(
    ctx: typer.Context,
    config: Optional[Path] = typer.Option(None, "--config", help="JSON configuration file (default: $SIPMARK_CONFIG)"),
    log_level: Optional[str] = typer.Option(None, "--log-level", help="Override logging.level from the configuration"),
):
    with _reporting_errors():
        toolkit = WatermarkToolkit(config_file=config)
    level = (log_level or toolkit.config.logging.level).upper()
    if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
        _usage(f"unknown log level {log_level!r}")
    configure_logging(level)
    ctx.obj = toolkit


@app.command()
def embed(
    ctx: typer.Context,
    w: int = typer.Argument(..., help="Watermark value"),
    variant_arg: Optional[str] = typer.Argument(None, metavar="[VARIANT]", show_default=False),
    out_arg: Optional[Path] = typer.Argument(None, metavar="[OUT]", show_default=False),
    variant: Optional[str] = typer.Option(None, "--variant", help="f1 or f2 (default f1)"),
    out: Optional[Path] = typer.Option(None, "--out", help="Where to write the graph"),
    dot: Optional[Path] = typer.Option(None, "--dot", help="Also write a DOT rendering"),
):
    """Encode W into a flow-graph file."""
    toolkit: WatermarkToolkit = ctx.obj
    chosen = _parse_variant(_pick(variant_arg, variant, "variant"), allow_auto=False, default=Variant.F1)
    target = _pick(out_arg, out, "output path")
    if target is None:
        _usage("embed needs an output path (positional OUT or --out)")

    with _reporting_errors():
        result = toolkit.embed(w, chosen)
        write_graph(target, result.graph)
        if dot is not None:
            dot.write_text(export_dot(result.graph), encoding="utf-8")

    _emit(w=result.watermark, variant=result.variant.value, n=result.n, n_star=result.n_star,
          k=result.k, indeg_s=result.indeg_s, nodes=result.graph.node_count,
          edges=result.graph.edge_count, out=target, dot=dot)


@app.command()
def extract(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Graph file"),
    variant_arg: Optional[str] = typer.Argument(None, metavar="[VARIANT]", show_default=False),
    variant: Optional[str] = typer.Option(None, "--variant", help="f1, f2 or auto (default auto)"),
):
    """Recover the watermark carried by a graph file."""
    toolkit: WatermarkToolkit = ctx.obj
    chosen = _parse_variant(_pick(variant_arg, variant, "variant"), allow_auto=True, default=Variant.AUTO)

    with _reporting_errors():
        result = toolkit.extract(read_graph(path), chosen)

    _emit(w=result.watermark, decoder=result.decoder.value, variant=result.variant.value,
          permutation=_tuple(result.permutation))


@app.command()
def verify(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Graph file"),
    as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
):
    """Check structure, reducibility and decode consistency of a graph file."""
    toolkit: WatermarkToolkit = ctx.obj
    with _reporting_errors():
        report = toolkit.verify(read_graph(path))

    if as_json:
        typer.echo(report.model_dump_json(indent=2))
    else:
        _emit(nodes=report.nodes, edges=report.edges, hamiltonian=_yes_no(report.hamiltonian),
              reducible=_yes_no(report.reducible), properties=_yes_no(report.properties),
              decode_consistent=_yes_no(report.decode_consistent), w=report.watermark,
              variant=report.variant.value if report.variant else None)
        for failure in report.failures:
            typer.echo(f"failure={_single_line(failure)}")

    if not report.passed:
        failed = [name for name, ok in (("hamiltonian", report.hamiltonian), ("reducible", report.reducible),
                                        ("properties", report.properties),
                                        ("decode_consistent", report.decode_consistent)) if not ok]
        typer.echo(f"error=verify:failed checks {','.join(failed)}", err=True)
        raise typer.Exit(EXIT_VALIDATION)


@app.command()
def inspect(
    ctx: typer.Context,
    w: int = typer.Argument(..., help="Watermark value"),
    as_json: bool = typer.Option(False, "--json", help="Print the report as JSON"),
):
    """Show pi*, its cycles, bitonic decomposition and P1-P3 for W."""
    toolkit: WatermarkToolkit = ctx.obj
    with _reporting_errors():
        report = toolkit.inspect(w)

    if as_json:
        typer.echo(report.model_dump_json(indent=2))
        return

    _emit(w=report.watermark, bits=report.bits, n=report.n, n_star=report.n_star,
          permutation=_tuple(report.permutation),
          cycles="".join(_tuple(cycle) for cycle in report.cycles), k=report.k)
    for index, b in enumerate(report.subsequences, start=1):
        typer.echo(f"b{index}={_tuple(b.elements)} kind={b.kind.value} top={b.top}")
    properties = report.properties
    _emit(p1=_yes_no(properties.p1), p2=_yes_no(properties.p2), p3=_yes_no(properties.p3))


@app.command()
def tamper(
    ctx: typer.Context,
    path: Path = typer.Argument(..., help="Watermarked graph file"),
    seed: int = typer.Option(0, "--seed", help="RNG seed (first seed of a campaign)"),
    ops: int = typer.Option(1, "--ops", help="Edge insertions/deletions per trial"),
    trials: int = typer.Option(1, "--trials", help="Number of consecutive seeds to try"),
    out: Optional[Path] = typer.Option(None, "--out", help="Where to write the mutated graph"),
    report_path: Optional[Path] = typer.Option(None, "--report", help="Write a JSON campaign summary"),
    progress: bool = typer.Option(False, "--progress/--no-progress", help="Show a progress bar on stderr"),
):
    """Apply seeded random edge mutations and report whether W survives."""
    toolkit: WatermarkToolkit = ctx.obj
    if ops < 1:
        _usage(f"--ops must be >= 1, got {ops}")
    if trials < 1:
        _usage(f"--trials must be >= 1, got {trials}")

    with _reporting_errors():
        graph = read_graph(path)
        if trials > 1:
            summary = toolkit.tamper_campaign(graph, seed, ops, trials, progress=progress)
            if report_path is not None:
                toolkit.export_summary(summary, report_path)
        else:
            mutated, outcome = toolkit.tamper(graph, seed, ops)
            target = out if out is not None else path.with_name(f"{path.stem}-tampered-{seed}{path.suffix}")
            write_graph(target, mutated)

    if trials > 1:
        _emit(original=summary.original, ops=summary.ops, first_seed=summary.first_seed,
              trials=summary.trials, recovered=summary.recovered, different=summary.different,
              errors=summary.errors, recovered_fraction=f"{summary.recovered_fraction:.4f}")
        for stage, count in sorted(summary.error_stages.items()):
            typer.echo(f"error_stage.{stage}={count}")
        return

    _emit(seed=outcome.seed, ops=outcome.ops, original=outcome.original, outcome=outcome.outcome.value,
          w=outcome.watermark if outcome.outcome is not TamperOutcomeKind.ERROR else None,
          stage=outcome.stage, detail=_single_line(outcome.detail) if outcome.detail else None,
          mutations=";".join(outcome.mutations), out=target)


def main() -> None:
    """Console-script entry point."""
    try:
        code = app(standalone_mode=False)
    except ClickException as e:
        typer.echo(f"error=usage:{_single_line(e.format_message())}", err=True)
        sys.exit(EXIT_USAGE if isinstance(e, UsageError) else EXIT_VALIDATION)
    except typer.Abort:
        sys.exit(EXIT_VALIDATION)
    sys.exit(code or EXIT_OK)
