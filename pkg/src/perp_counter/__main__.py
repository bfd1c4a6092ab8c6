"""Command line interface for counting common perpendiculars and checking the counts."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Annotated, Any, NoReturn

import typer
from dotenv import load_dotenv
from pydantic import BaseModel
from rich.console import Console
from rich.table import Table

from . import __application_binary__, __application_title__, __version__
from .arith.divisors import divisor_sum_rational, sieve_d, sieve_dK
from .arith.matrices import Mat2
from .arith.rings import Discriminant
from .errors import InvariantViolation, PerpCounterError
from .figures import build_figure, emit_csv, emit_svg
from .logging_config import debug_log_file, get_logger, setup_logging
from .models import (
    CountReport,
    ErrorEnvelope,
    FigureKind,
    HeisCase,
    KField,
    OutputFormat,
    PairKind,
    ReportEnvelope,
    Settings,
)
from .services import (
    SettingsManager,
    bianchi_count,
    classify,
    count_ambiguous,
    count_ambiguous_reciprocal,
    count_perp,
    ratio_reports,
)
from .services import checks
from .services.constants import constants_table, modular_coefficient
from .services.perp_count import asymptotic_fit, double_coset_chain
from .utils.numeric import Threshold

# Create the main Typer app with rich help
app = typer.Typer(
    name=__application_binary__,
    help=f"{__application_title__} - Count common perpendiculars in arithmetic hyperbolic orbifolds",
    rich_markup_mode="rich",
    add_completion=False,
)
sieve_app = typer.Typer(help="Divisor-count sieves over the integers and imaginary quadratic rings")
count_app = typer.Typer(help="Common perpendicular counts and divisor-sum ratios")
verify_app = typer.Typer(help="Cross-check independent computations")
ambiguous_app = typer.Typer(help="Ambiguous and reciprocal elements of the modular group")
plot_app = typer.Typer(help="Figures folded into the modular fundamental domain")
config_app = typer.Typer(help="Manage the settings file")
app.add_typer(sieve_app, name="sieve")
app.add_typer(count_app, name="count")
app.add_typer(verify_app, name="verify")
app.add_typer(ambiguous_app, name="ambiguous")
app.add_typer(plot_app, name="plot")
app.add_typer(config_app, name="config")

console = Console(stderr=True)
logger = get_logger(__name__)

# Load environment variables
load_dotenv()
load_dotenv(Path(f"~/.{__application_binary__}.env").expanduser())

OutOption = Annotated[
    OutputFormat | None,
    typer.Option("--out", "-o", help="Output format, overrides the global --out", case_sensitive=False),
]
ThresholdOption = Annotated[
    str,
    typer.Option("--s", "-s", help="Length bound: a real like [cyan]10[/cyan], or [cyan]acosh:3[/cyan], [cyan]acosh:sqrt(2)[/cyan]"),
]
KFieldOption = Annotated[KField, typer.Option("--kfield", "-k", help="Division algebra R, C or H", case_sensitive=False)]


@dataclass
class CliState:
    """Values resolved by the top-level callback and shared with every command."""

    settings: Settings
    out: OutputFormat
    config_path: Path | None = None


def version_callback(value: bool) -> None:
    """Print version and exit."""
    if value:
        console.print(f"[bold blue]{__application_title__}[/bold blue] version [bold green]{__version__}[/bold green]")
        raise typer.Exit()


@app.callback()
def main(
    ctx: typer.Context,
    version: Annotated[
        bool,
        typer.Option("--version", "-v", callback=version_callback, is_eager=True, help="Show version and exit"),
    ] = False,
    seed: Annotated[int | None, typer.Option("--seed", help="Root seed for every random stream")] = None,
    threads: Annotated[int | None, typer.Option("--threads", "-t", min=1, help="Concurrent shards or bands")] = None,
    out: Annotated[
        OutputFormat, typer.Option("--out", "-o", help="Output format", case_sensitive=False)
    ] = OutputFormat.JSON,
    format_version: Annotated[int | None, typer.Option("--format-version", help="Report format version")] = None,
    debug: Annotated[bool, typer.Option("--debug", "-d", help="Enable debug logging to ./logs")] = False,
    config: Annotated[Path | None, typer.Option("--config", help="Settings file to use")] = None,
) -> None:
    """Perp Counter - count common perpendiculars in the modular and Bianchi orbifolds.

    Counts are exact integers from divisor sums, checked against direct enumeration."""
    setup_logging(debug=debug, log_file=debug_log_file() if debug else None)
    if ctx.invoked_subcommand == "config":
        ctx.obj = CliState(settings=Settings(), out=out, config_path=config)
        return
    try:
        manager = SettingsManager(config)
        settings = manager.effective(seed=seed, threads=threads, format_version=format_version)
    except Exception as e:
        console.print(f"[bold red]Error:[/bold red] {str(e)}")
        raise typer.Exit(code=1)
    ctx.obj = CliState(settings=settings, out=out, config_path=config)


# --- output helpers ------------------------------------------------------------------------------


def _state(ctx: typer.Context) -> CliState:
    state = ctx.find_root().obj
    if not isinstance(state, CliState):
        state = CliState(settings=Settings(), out=OutputFormat.JSON)
    return state


def _format(ctx: typer.Context, out: OutputFormat | None, allowed: tuple[OutputFormat, ...]) -> OutputFormat:
    fmt = out or _state(ctx).out
    if fmt not in allowed:
        names = ", ".join(f.value for f in allowed)
        raise typer.BadParameter(f"--out {fmt.value} is not available here (use {names})")
    return fmt


def _jsonable(value: Any) -> Any:
    if isinstance(value, BaseModel):
        return value.model_dump(mode="json")
    if isinstance(value, list | tuple):
        return [_jsonable(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    return value


def _write(ctx: typer.Context, stem: str, text: str, ext: str) -> None:
    """Print to stdout, or save under the configured output directory."""
    out_dir = _state(ctx).settings.out_dir
    if out_dir is None:
        typer.echo(text, nl=not text.endswith("\n"))
        return
    out_dir.mkdir(parents=True, exist_ok=True)
    path = out_dir / f"{stem.replace(' ', '_')}.{ext}"
    path.write_text(text, encoding="utf-8")
    console.print(f"[green]Wrote[/green] {path}")


def _emit_json(ctx: typer.Context, command: str, params: dict[str, Any], results: Any, started: float) -> None:
    envelope = ReportEnvelope(
        tool_version=__version__,
        command=command,
        params=_jsonable(params),
        results=_jsonable(results),
        timing_ms=(time.perf_counter() - started) * 1000.0,
        format_version=_state(ctx).settings.format_version,
    )
    _write(ctx, command, envelope.model_dump_json(indent=2) + "\n", "json")


def _csv_text(header: list[str], rows: list[list[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue()


_REPORT_COLUMNS = ["pair", "param_name", "param", "count", "main_term", "second_order", "ratio", "residual"]


def _emit_reports(
    ctx: typer.Context, command: str, params: dict[str, Any], reports: list[CountReport], fmt: OutputFormat, started: float
) -> None:
    if fmt == OutputFormat.CSV:
        rows = [[getattr(r, c) for c in _REPORT_COLUMNS] for r in reports]
        _write(ctx, command, _csv_text(_REPORT_COLUMNS, rows), "csv")
        return
    _emit_json(ctx, command, params, reports if len(reports) > 1 else reports[0], started)


def _fail(command: str, e: Exception) -> NoReturn:
    """Report a failed command; invariant violations become a JSON error object on stdout."""
    if isinstance(e, InvariantViolation):
        error = ErrorEnvelope(tool_version=__version__, command=command, error=str(e), kind=type(e).__name__)
        typer.echo(error.model_dump_json(indent=2))
    else:
        logger.debug(f"{command} failed", exc_info=True)
        console.print(f"[bold red]Error:[/bold red] {str(e)}")
    raise typer.Exit(code=1)


def _threshold(text: str) -> Threshold:
    try:
        return Threshold.parse(text)
    except PerpCounterError as e:
        raise typer.BadParameter(str(e)) from e


def _discriminant(value: int) -> Discriminant:
    try:
        return Discriminant(value)
    except PerpCounterError as e:
        raise typer.BadParameter(str(e)) from e


def _matrix(text: str) -> Mat2:
    try:
        a, b, c, d = (int(v) for v in text.replace(" ", "").split(","))
    except ValueError as e:
        raise typer.BadParameter(f"expected four integers a,b,c,d, got {text!r}") from e
    return Mat2(a, b, c, d)


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise typer.BadParameter(f"not a rational number: {text!r}") from e


def _positive_floats(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.replace(" ", "").split(","))
    except ValueError as e:
        raise typer.BadParameter(f"expected comma-separated numbers, got {text!r}") from e
    if not all(v > 0 for v in values):
        raise typer.BadParameter(f"values must be positive, got {text!r}")
    return values


def _t_range(text: str, step: float = 2.0) -> tuple[float, ...]:
    """``lo:hi`` as the times lo, lo + step, ..., up to hi."""
    try:
        lo, hi = (float(v) for v in text.split(":"))
    except ValueError as e:
        raise typer.BadParameter(f"expected lo:hi, got {text!r}") from e
    if not 0 <= lo < hi:
        raise typer.BadParameter(f"need 0 <= lo < hi, got {text!r}")
    count = int((hi - lo) // step) + 1
    times = tuple(lo + k * step for k in range(count))
    return times if len(times) >= 2 else (lo, hi)



# --- sieve ---------------------------------------------------------------------------------------


@sieve_app.command("rational")
def sieve_rational(
    ctx: typer.Context,
    n_max: Annotated[int, typer.Option("--n", "-n", min=1, help="Sieve d(k) for k <= n")],
    out: OutOption = None,
) -> None:
    """Divisor counts d(k) for 1 <= k <= n."""
    fmt = _format(ctx, out, (OutputFormat.JSON, OutputFormat.CSV))
    started = time.perf_counter()
    try:
        table = sieve_d(n_max)
        values = table.counts[1:].tolist()
        if fmt == OutputFormat.CSV:
            _write(ctx, "sieve-rational", _csv_text(["k", "d"], [[k, v] for k, v in enumerate(values, 1)]), "csv")
            return
        results = {"n_max": n_max, "divisor_pair_sum": divisor_sum_rational(n_max - 1) if n_max > 1 else 0, "d": values}
        _emit_json(ctx, "sieve rational", {"n_max": n_max}, results, started)
    except Exception as e:
        _fail("sieve rational", e)


@sieve_app.command("quadratic")
def sieve_quadratic(
    ctx: typer.Context,
    disc: Annotated[int, typer.Option("--disc", "-D", help="Fundamental discriminant, e.g. -4")],
    radius: Annotated[int, typer.Option("--radius", "-N", min=1, help="Sieve d_K(x) for N(x) <= radius²")],
    out: OutOption = None,
) -> None:
    """Divisor counts d_K(x) over the disk of radius N in O_K."""
    fmt = _format(ctx, out, (OutputFormat.JSON, OutputFormat.CSV))
    discriminant = _discriminant(disc)
    state = _state(ctx)
    started = time.perf_counter()
    try:
        table = sieve_dK(discriminant, radius, band_bytes=state.settings.band_bytes)
        layout = table.layout
        xs, ys = layout.coords_of_rows(0, layout.height)
        norms = layout.norms(xs, ys)
        counts = table.counts()
        inside = (norms > 0) & (norms <= layout.bound)
        rows = [
            [int(x), int(y), int(nm), int(c)]
            for x, y, nm, c in zip(xs[inside], ys[inside], norms[inside], counts[inside], strict=True)
        ]
        if fmt == OutputFormat.CSV:
            _write(ctx, "sieve-quadratic", _csv_text(["x", "y", "norm", "d_K"], rows), "csv")
            return
        results = {"disc": disc, "radius": radius, "points": len(rows), "units": table.units_count, "table": rows}
        _emit_json(ctx, "sieve quadratic", {"disc": disc, "radius": radius}, results, started)
    except Exception as e:
        _fail("sieve quadratic", e)


# --- count ---------------------------------------------------------------------------------------


@count_app.command("perp")
def count_perp_cmd(
    ctx: typer.Context,
    pair: Annotated[PairKind, typer.Option("--pair", "-p", help="Counted pair", case_sensitive=False)],
    s: ThresholdOption,
    primitive: Annotated[bool, typer.Option("--primitive", help="Drop perpendiculars of proper powers")] = False,
    check: Annotated[bool, typer.Option("--check/--no-check", help="Compare with direct enumeration")] = True,
    out: OutOption = None,
) -> None:
    """Common perpendiculars of length at most s in the modular orbifold."""
    fmt = _format(ctx, out, (OutputFormat.JSON, OutputFormat.CSV))
    threshold = _threshold(s)
    state = _state(ctx)
    started = time.perf_counter()
    try:
        report = count_perp(pair, threshold, primitive=primitive, threads=state.settings.threads, check=check)
        params = {"pair": pair.value, "s": str(threshold), "primitive": primitive}
        _emit_reports(ctx, "count perp", params, [report], fmt, started)
    except Exception as e:
        _fail("count perp", e)


@count_app.command("bianchi")
def count_bianchi(
    ctx: typer.Context,
    disc: Annotated[int, typer.Option("--disc", "-D", help="Imaginary quadratic discriminant")] = -4,
    radius: Annotated[int, typer.Option("--radius", "-N", min=2, help="Radius N of the quadruple count")] = 500,
    out: OutOption = None,
) -> None:
    """Quadruple count Σ d_K(k)·d_K(k − 1) of the vertical geodesic of a Bianchi orbifold."""
    fmt = _format(ctx, out, (OutputFormat.JSON, OutputFormat.CSV))
    discriminant = _discriminant(disc)
    state = _state(ctx)
    started = time.perf_counter()
    try:
        report = bianchi_count(
            discriminant, radius, band_bytes=state.settings.band_bytes, threads=state.settings.threads
        )
        _emit_reports(ctx, "count bianchi", {"disc": disc, "radius": radius}, [report], fmt, started)
    except Exception as e:
        _fail("count bianchi", e)


@count_app.command("ratios")
def count_ratios(
    ctx: typer.Context,
    n: Annotated[int, typer.Option("--n", "-n", min=2, help="Rational summation bound")] = 10**6,
    radius: Annotated[list[int] | None, typer.Option("--radius", "-N", help="Quadratic radii (repeatable)")] = None,
    disc: Annotated[int, typer.Option("--disc", "-D", help="Imaginary quadratic discriminant")] = -4,
    out: OutOption = None,
) -> None:
    """Divisor sums against their predicted growth, with and without second-order terms."""
    fmt = _format(ctx, out, (OutputFormat.JSON, OutputFormat.CSV))
    discriminant = _discriminant(disc)
    radii = radius or [2000]
    started = time.perf_counter()
    try:
        reports = ratio_reports(n, radii, discriminant, band_bytes=_state(ctx).settings.band_bytes)
        _emit_reports(ctx, "count ratios", {"n": n, "radii": radii, "disc": disc}, reports, fmt, started)
    except Exception as e:
        _fail("count ratios", e)


@count_app.command("fit")
def count_fit(
    ctx: typer.Context,
    pair: Annotated[PairKind, typer.Option("--pair", "-p", help="Counted pair", case_sensitive=False)] = PairKind.DD,
    s: Annotated[list[float] | None, typer.Option("--s", "-s", help="Length bounds (repeatable)")] = None,
) -> None:
    """Least-squares fit of count·e^(−s) against s², s and 1."""
    _format(ctx, None, (OutputFormat.JSON,))
    values = s or [10.0, 12.0, 14.0]
    started = time.perf_counter()
    try:
        threads = _state(ctx).settings.threads
        reports = [count_perp(pair, value, threads=threads, check=False) for value in values]
        fit = asymptotic_fit([(r.param, r.count) for r in reports])
        coeff, power = modular_coefficient(pair)
        results = {
            "reports": reports,
            "fit": {"c2": fit.c2, "c1": fit.c1, "c0": fit.c0, "residuals": list(fit.residuals)},
            "predicted": {"coefficient": coeff, "power": power},
        }
        _emit_json(ctx, "count fit", {"pair": pair.value, "s": values}, results, started)
    except Exception as e:
        _fail("count fit", e)


@count_app.command("chain")
def count_chain(
    ctx: typer.Context,
    disc: Annotated[int, typer.Option("--disc", "-D", help="Imaginary quadratic discriminant")] = -4,
    radius: Annotated[int, typer.Option("--radius", "-N", min=2, help="Radius N, kept small")] = 8,
) -> None:
    """Reduce the quadruples to double cosets of the stabilizer of the vertical geodesic."""
    _format(ctx, None, (OutputFormat.JSON,))
    discriminant = _discriminant(disc)
    started = time.perf_counter()
    try:
        report = double_coset_chain(discriminant, radius)
        _emit_json(ctx, "count chain", {"disc": disc, "radius": radius}, report, started)
    except Exception as e:
        _fail("count chain", e)


# --- verify --------------------------------------------------------------------------------------


def _run_check(ctx: typer.Context, command: str, params: dict[str, Any], func: Any, **kwargs: Any) -> None:
    _format(ctx, None, (OutputFormat.JSON,))
    started = time.perf_counter()
    try:
        results = func(**kwargs)
        _emit_json(ctx, command, params, results, started)
    except Exception as e:
        _fail(command, e)


@verify_app.command("divisor-bridge")
def verify_divisor_bridge(
    ctx: typer.Context,
    max_bc: Annotated[int, typer.Option("--max-bc", min=1, help="Largest bc among the translates of Δ")] = 1000,
) -> None:
    """Direct enumeration of the translates of Δ against Σ d(k)d(k+1)."""
    threads = _state(ctx).settings.threads
    command = f"verify {ctx.info_name}"
    _run_check(ctx, command, {"max_bc": max_bc}, checks.divisor_bridge, max_bc=max_bc, threads=threads)


@verify_app.command("complex-length")
def verify_complex_length(
    ctx: typer.Context,
    disc: Annotated[int, typer.Option("--disc", "-D", help="Imaginary quadratic discriminant")] = -4,
    samples: Annotated[int, typer.Option("--samples", min=1, help="Random SL2(O_K) elements")] = 100,
    seed: Annotated[int | None, typer.Option("--seed", help="Seed, overriding the global one")] = None,
) -> None:
    """cosh λ + cos θ = 2|ad| against an independent geometric search."""
    discriminant = _discriminant(disc)
    if discriminant.is_rational:
        raise typer.BadParameter("need an imaginary quadratic discriminant", param_hint="--disc")
    seed = _state(ctx).settings.seed if seed is None else seed
    params = {"disc": disc, "samples": samples, "seed": seed}
    _run_check(
        ctx,
        f"verify {ctx.info_name}",
        params,
        checks.complex_length_identity,
        samples=samples,
        seed=seed,
        disc=discriminant,
    )


@verify_app.command("ray")
def verify_ray(
    ctx: typer.Context,
    a: Annotated[str, typer.Option("--a", help="Horizontal offsets, comma separated")] = "0.5,1,3",
    t_range: Annotated[str, typer.Option("--t-range", help="Times lo:hi, sampled every 2")] = "2:8",
) -> None:
    """Exponential decay of the ray-distance residual in the real hyperbolic plane."""
    a_values, ts = _positive_floats(a), _t_range(t_range)
    params = {"a": list(a_values), "t": list(ts)}
    _run_check(ctx, f"verify {ctx.info_name}", params, checks.ray_expansion, a_values=a_values, ts=ts)


# Alternate command names
verify_app.command("prop19", hidden=True)(verify_divisor_bridge)
verify_app.command("eq78", hidden=True)(verify_complex_length)
verify_app.command("lemma4", hidden=True)(verify_ray)


@verify_app.command("heis-ray")
def verify_heis_ray(
    ctx: typer.Context, kfield: KFieldOption = KField.C, n: Annotated[int, typer.Option("--n", min=2)] = 2
) -> None:
    """Exponential decay of the ray-distance residual over the Heisenberg group."""
    seed = _state(ctx).settings.seed
    params = {"kfield": kfield.value, "n": n, "seed": seed}
    _run_check(ctx, "verify heis-ray", params, checks.heis_ray_expansion, kfield=kfield, n=n, seed=seed)


@verify_app.command("xi")
def verify_xi(
    ctx: typer.Context,
    kfield: KFieldOption = KField.C,
    n: Annotated[int, typer.Option("--n", min=2)] = 2,
    samples: Annotated[int | None, typer.Option("--samples", help="Monte Carlo samples")] = None,
) -> None:
    """Both closed forms of Ξ against a stratified Monte Carlo estimate."""
    settings = _state(ctx).settings
    count = samples or settings.monte_carlo_samples
    params = {"kfield": kfield.value, "n": n, "samples": count, "seed": settings.seed}
    _run_check(
        ctx, "verify xi", params, checks.xi_check, kfield=kfield, n=n, samples=count, seed=settings.seed, threads=settings.threads
    )


@verify_app.command("constants")
def verify_constants(ctx: typer.Context) -> None:
    """Counting coefficients against their pipeline forms and the modular and Bianchi values."""
    _run_check(ctx, "verify constants", {}, checks.constants_cross_check)


@verify_app.command("reflections")
def verify_reflections(
    ctx: typer.Context, bound: Annotated[int, typer.Option("--bound", min=1, help="Largest |entry|")] = 6
) -> None:
    """Conjugation by the reflections in Δ and Δ₁ against the entry tests."""
    _run_check(ctx, "verify reflections", {"bound": bound}, checks.reflection_identity, bound=bound)


# --- constants, ambiguous, heisenberg ------------------------------------------------------------


@app.command()
def constants(
    ctx: typer.Context,
    kfield: KFieldOption = KField.R,
    n: Annotated[int, typer.Option("--n", min=2, help="Dimension over the algebra")] = 2,
    disc: Annotated[int | None, typer.Option("--disc", "-D", help="Bianchi discriminant")] = None,
    volume: Annotated[float, typer.Option("--volume", min=0.0, help="Orbifold volume")] = 1.0,
) -> None:
    """Critical exponent, Ξ, Bowen-Margulis mass and the counting coefficients."""
    _format(ctx, None, (OutputFormat.JSON,))
    discriminant = None if disc is None else _discriminant(disc)
    started = time.perf_counter()
    try:
        table = constants_table(kfield, n, discriminant, volume)
        _emit_json(ctx, "constants", {"kfield": kfield.value, "n": n, "disc": disc, "volume": volume}, table, started)
    except Exception as e:
        _fail("constants", e)


@ambiguous_app.command("classify")
def ambiguous_classify(
    ctx: typer.Context,
    matrix: Annotated[str, typer.Option("--matrix", "-m", help="Entries a,b,c,d of an element of SL2(Z)")],
) -> None:
    """Ambiguity kinds, reciprocity, proper power flag and cyclic word of an element."""
    _format(ctx, None, (OutputFormat.JSON,))
    gamma = _matrix(matrix)
    started = time.perf_counter()
    try:
        _emit_json(ctx, "ambiguous classify", {"matrix": matrix}, classify(gamma), started)
    except Exception as e:
        _fail("ambiguous classify", e)


@ambiguous_app.command("count")
def ambiguous_count(
    ctx: typer.Context,
    s: ThresholdOption,
    primitive: Annotated[bool, typer.Option("--primitive", help="Count primitive classes only")] = False,
    reciprocal: Annotated[bool, typer.Option("--reciprocal", help="Count ambiguous reciprocal classes")] = False,
    out: OutOption = None,
) -> None:
    """Ambiguous classes of translation length at most s."""
    fmt = _format(ctx, out, (OutputFormat.JSON, OutputFormat.CSV))
    threshold = _threshold(s)
    started = time.perf_counter()
    try:
        counter = count_ambiguous_reciprocal if reciprocal else count_ambiguous
        report = counter(threshold, primitive=primitive, threads=_state(ctx).settings.threads)
        params = {"s": str(threshold), "primitive": primitive, "reciprocal": reciprocal}
        _emit_reports(ctx, "ambiguous count", params, [report], fmt, started)
    except Exception as e:
        _fail("ambiguous count", e)


@app.command()
def heisenberg(
    ctx: typer.Context,
    case: Annotated[HeisCase, typer.Option("--case", "-c", help="Check to run", case_sensitive=False)],
    kfield: KFieldOption = KField.C,
    n: Annotated[int, typer.Option("--n", min=2, help="Dimension over the algebra")] = 2,
    samples: Annotated[int | None, typer.Option("--samples", help="Samples for the chosen check")] = None,
) -> None:
    """Horospherical geometry checks over the Heisenberg group."""
    settings = _state(ctx).settings
    params: dict[str, Any] = {"case": case.value, "kfield": kfield.value, "n": n, "seed": settings.seed}
    kwargs: dict[str, Any] = {"kfield": kfield, "n": n, "seed": settings.seed}
    match case:
        case HeisCase.CYGAN:
            func = checks.cygan_invariance
            kwargs["samples"] = samples or 100
        case HeisCase.RAY:
            func = checks.heis_ray_expansion
        case HeisCase.XI:
            func = checks.xi_check
            kwargs["samples"] = samples or settings.monte_carlo_samples
            kwargs["threads"] = settings.threads
        case HeisCase.SCALING:
            func = checks.horosphere_scaling
            kwargs["samples"] = samples or 100
    if "samples" in kwargs:
        params["samples"] = kwargs["samples"]
    _run_check(ctx, "heisenberg", params, func, **kwargs)


# --- plot ----------------------------------------------------------------------------------------


def _plot(ctx: typer.Context, kind: FigureKind, out: OutputFormat | None, options: dict[str, Any]) -> None:
    fmt = _format(ctx, out, (OutputFormat.SVG, OutputFormat.CSV, OutputFormat.JSON))
    command = f"plot {kind.value}"
    options.setdefault("samples", _state(ctx).settings.svg_samples)
    started = time.perf_counter()
    try:
        figure = build_figure(kind, **options)
        if fmt == OutputFormat.SVG:
            _write(ctx, f"plot-{kind.value}", emit_svg(figure), "svg")
        elif fmt == OutputFormat.CSV:
            _write(ctx, f"plot-{kind.value}", emit_csv(figure), "csv")
        else:
            results = {
                "title": figure.title,
                "series": figure.series(),
                "polylines": len(figure.polylines),
                "markers": [[z.real, z.imag, label] for z, label in figure.markers],
                "meta": figure.meta,
            }
            _emit_json(ctx, command, {k: str(v) for k, v in options.items()}, results, started)
    except Exception as e:
        _fail(command, e)


@plot_app.command("divergent")
def plot_divergent(
    ctx: typer.Context,
    rational: Annotated[list[str] | None, typer.Option("--rational", "-r", help="Endpoint p/q (repeatable)")] = None,
    max_den: Annotated[int, typer.Option("--max-den", min=1, help="Largest denominator")] = 6,
    out: OutOption = None,
) -> None:
    """Vertical geodesics from rational cusps, folded into the fundamental domain."""
    options: dict[str, Any] = {"max_den": max_den}
    if rational:
        options["rationals"] = [_rational(r) for r in rational]
    _plot(ctx, FigureKind.DIVERGENT, out, options)


@plot_app.command("perpendiculars")
def plot_perpendiculars(
    ctx: typer.Context,
    max_bc: Annotated[int, typer.Option("--max-bc", min=1, help="Largest bc among the translates")] = 300,
    lo: Annotated[float, typer.Option("--lo", help="Smallest axis half-width")] = 2.05,
    hi: Annotated[float, typer.Option("--hi", help="Largest axis half-width")] = 2.1,
    out: OutOption = None,
) -> None:
    """Closed geodesics doubling the perpendiculars from Δ with axis half-width in [lo, hi]."""
    _plot(ctx, FigureKind.PERPENDICULARS, out, {"max_bc": max_bc, "lo": lo, "hi": hi})


@plot_app.command("ambiguous")
def plot_ambiguous(ctx: typer.Context, out: OutOption = None) -> None:
    """Δ, Δ₁ and the closed geodesics of two ambiguous elements of the first kind."""
    _plot(ctx, FigureKind.AMBIGUOUS, out, {})


# --- config --------------------------------------------------------------------------------------


def _manager(ctx: typer.Context) -> SettingsManager:
    return SettingsManager(_state(ctx).config_path)


@config_app.command("show")
def config_show(ctx: typer.Context) -> None:
    """Show the stored settings."""
    try:
        manager = _manager(ctx)
        table = Table(title=f"Settings ({manager.config_path})")
        table.add_column("Key", style="bold")
        table.add_column("Value", style="cyan")
        for key, value in manager.settings.model_dump().items():
            table.add_row(key, "" if value is None else str(value))
        console.print(table)
    except Exception as e:
        console.print(f"[bold red]Error:[/bold red] {str(e)}")
        raise typer.Exit(code=1)


@config_app.command("set")
def config_set(
    ctx: typer.Context,
    key: Annotated[str, typer.Argument(help="Setting name")],
    value: Annotated[str, typer.Argument(help="New value, 'none' to clear")],
) -> None:
    """Change one setting and save the file."""
    try:
        settings = _manager(ctx).set_value(key, value)
        console.print(f"[green]✓[/green] {key} = {getattr(settings, key)}")
    except Exception as e:
        console.print(f"[bold red]Error:[/bold red] {str(e)}")
        raise typer.Exit(code=1)


@config_app.command("path")
def config_path(ctx: typer.Context) -> None:
    """Print the location of the settings file."""
    typer.echo(str(_manager(ctx).config_path))


if __name__ == "__main__":
    app()
