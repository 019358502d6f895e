"""Command line entry point: ``robustloss {eval,sweep,fit,props}``.

Tables go to stdout as TSV, diagnostics to stderr. Numbers are printed with
``%.12g`` (shortest form within 12 significant digits); ``-inf`` is the
spelling for alpha = -infinity both on input and in column headers.

Exit codes: 0 success, 1 error, 2 (``fit`` only) when IRLS did not converge.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import click
import numpy as np

from . import analysis, estimation, loss_core
from .loss_core import NEG_INF, LossParams, power_param, scale_param

DEFAULT_ALPHAS = (2.0, 1.0, 0.0, -2.0, NEG_INF)
QUANTITIES = ("loss", "gradient", "weight")


class CsvError(ValueError):
    pass


def fmt(value: float) -> str:
    return format(value, ".12g")


def fmt_alpha(alpha: float) -> str:
    return "-inf" if alpha == NEG_INF else fmt(alpha)


@dataclass(frozen=True)
class SweepSpec:
    alphas: Tuple[float, ...] = DEFAULT_ALPHAS
    c: float = 1.0
    x_min: float = -6.0
    x_max: float = 6.0
    samples: int = 601
    quantity: str = "loss"
    log10: bool = False
    # Original spellings for the header; defaults to fmt_alpha.
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(power_param(a) for a in self.alphas))
        object.__setattr__(self, "c", scale_param(self.c))
        if not self.alphas:
            raise ValueError("need at least one alpha")
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max) and self.x_min < self.x_max):
            raise ValueError(f"need finite x_min < x_max, got {self.x_min}, {self.x_max}")
        if self.samples < 2:
            raise ValueError("samples must be >= 2")
        if self.quantity not in QUANTITIES:
            raise ValueError(f"quantity must be one of {QUANTITIES}")
        if self.log10 and self.quantity != "weight":
            raise ValueError("log10 output is only available for quantity=weight")
        if self.labels is not None and len(self.labels) != len(self.alphas):
            raise ValueError("labels must match alphas")


def sweep_grid(spec: SweepSpec) -> List[float]:
    """Evenly spaced x/c values; endpoint-symmetric so 0 and integers land exactly."""
    n = spec.samples - 1
    return [(spec.x_min * (n - i) + spec.x_max * i) / n for i in range(spec.samples)]


_KERNELS = {"loss": loss_core.rho, "gradient": loss_core.gradient, "weight": loss_core.weight}


def sweep_table(spec: SweepSpec) -> Tuple[List[float], List[List[float]]]:
    """Return the x/c grid and one column of values per alpha."""
    grid = sweep_grid(spec)
    kernel = _KERNELS[spec.quantity]
    columns = []
    for alpha in spec.alphas:
        params = LossParams(alpha, spec.c)
        col = [kernel(t * spec.c, params) for t in grid]
        if spec.log10:
            col = [math.log10(v) if v > 0 else -math.inf for v in col]
        columns.append(col)
    return grid, columns


def render_sweep(spec: SweepSpec) -> str:
    grid, columns = sweep_table(spec)
    labels = spec.labels or tuple(fmt_alpha(a) for a in spec.alphas)
    lines = ["\t".join(("x_over_c",) + labels)]
    for i, t in enumerate(grid):
        lines.append("\t".join([fmt(t)] + [fmt(col[i]) for col in columns]))
    return "\n".join(lines) + "\n"


def render_eval(x: float, params: LossParams) -> str:
    k = loss_core.eval_all(x, params)
    row = [fmt(x), fmt_alpha(params.alpha), fmt(params.c), fmt(k.value), fmt(k.gradient), fmt(k.weight), fmt(k.curvature)]
    return "\t".join(row) + "\n"


def render_props(params: LossParams) -> str:
    def opt(v, absent):
        return absent if v is None else fmt(v)

    rows = [
        ("alpha", fmt_alpha(params.alpha)),
        ("c", fmt(params.c)),
        ("redescend_point", opt(analysis.redescend_point(params), "none")),
        ("loss_supremum", opt(analysis.loss_supremum(params), "unbounded")),
        ("gradient_bound", opt(analysis.gradient_bound(params), "unbounded")),
        ("curvature_bound", opt(analysis.curvature_bound(params), "unbounded")),
    ]
    return "".join(f"{k}\t{v}\n" for k, v in rows)


def read_csv(path: str) -> estimation.Dataset:
    """Headered numeric CSV; last column is the target."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        raise CsvError(f"{path}: cannot read ({exc.strerror})") from None
    if not lines or not lines[0].strip():
        raise CsvError(f"{path}: missing header row")
    header = [h.strip() for h in lines[0].split(",")]
    if len(header) < 2:
        raise CsvError(f"{path}: need at least one feature column and a target column")
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != len(header):
            raise CsvError(f"{path}:{lineno}: expected {len(header)} columns, found {len(cells)}")
        row = []
        for col, cell in enumerate(cells, start=1):
            try:
                v = float(cell.strip())
            except ValueError:
                raise CsvError(
                    f"{path}:{lineno}: column {col} ({header[col - 1]!r}) is not numeric: {cell.strip()!r}"
                ) from None
            if not math.isfinite(v):
                raise CsvError(f"{path}:{lineno}: column {col} ({header[col - 1]!r}) is not finite")
            row.append(v)
        rows.append(row)
    if not rows:
        raise CsvError(f"{path}: no data rows")
    data = np.array(rows)
    return estimation.Dataset(data[:, :-1], data[:, -1])


def render_fit(report: estimation.FitReport) -> str:
    m = report.model
    lines = [f"coefficient[{i}]\t{fmt(v)}" for i, v in enumerate(m.coefficients)]
    lines += [
        f"intercept\t{fmt(m.intercept)}",
        f"iterations\t{report.iterations}",
        f"final_objective\t{fmt(report.final_objective)}",
        f"converged\t{str(report.converged).lower()}",
    ]
    for st in report.per_stage:
        lines.append(f"stage\talpha={fmt_alpha(st.alpha)}\tobjective={fmt(st.objective)}\titerations={st.iterations}")
    return "\n".join(lines) + "\n"


class AlphaType(click.ParamType):
    name = "alpha"

    def convert(self, value, param, ctx):
        if isinstance(value, float):
            return value
        try:
            return power_param(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


class ScaleType(click.ParamType):
    name = "c"

    def convert(self, value, param, ctx):
        try:
            return scale_param(value)
        except ValueError as exc:
            self.fail(str(exc), param, ctx)


ALPHA = AlphaType()
SCALE = ScaleType()


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def cli():
    """Evaluate, tabulate and fit with the general robust loss rho(x, alpha, c)."""


@cli.command("eval")
@click.option("--x", "x", type=float, required=True, help="Residual value.")
@click.option("--alpha", type=ALPHA, required=True, help="Shape; '-inf' allowed.")
@click.option("--c", "c", type=SCALE, default=1.0, show_default=True, help="Scale (> 0).")
def eval_cmd(x, alpha, c):
    """Print one TSV row: x, alpha, c, loss, gradient, weight, curvature."""
    try:
        out = render_eval(x, LossParams(alpha, c))
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(out, nl=False)


@cli.command("sweep")
@click.option("--quantity", type=click.Choice(QUANTITIES), default="loss", show_default=True)
@click.option("--alphas", default="2,1,0,-2,-inf", show_default=True, help="Comma-separated alphas.")
@click.option("--c", "c", type=SCALE, default=1.0, show_default=True)
@click.option("--x-min", type=float, default=-6.0, show_default=True, help="In units of c.")
@click.option("--x-max", type=float, default=6.0, show_default=True, help="In units of c.")
@click.option("--samples", type=int, default=601, show_default=True)
@click.option("--log10", is_flag=True, help="Emit log10 of the weight (quantity=weight only).")
def sweep_cmd(quantity, alphas, c, x_min, x_max, samples, log10):
    """Tabulate a quantity over x/c, one column per alpha."""
    labels = tuple(a.strip() for a in alphas.split(",") if a.strip())
    try:
        spec = SweepSpec(
            alphas=tuple(power_param(a) for a in labels),
            c=c, x_min=x_min, x_max=x_max, samples=samples,
            quantity=quantity, log10=log10,
            labels=tuple("-inf" if power_param(a) == NEG_INF else a for a in labels),
        )
    except ValueError as exc:
        raise click.UsageError(str(exc))
    click.echo(render_sweep(spec), nl=False)


@cli.command("props")
@click.option("--alpha", type=ALPHA, required=True)
@click.option("--c", "c", type=SCALE, default=1.0, show_default=True)
def props_cmd(alpha, c):
    """Print the redescend point and the loss/gradient/curvature bounds."""
    click.echo(render_props(LossParams(alpha, c)), nl=False)


@cli.command("fit")
@click.argument("csv_path")
@click.option("--alpha", type=ALPHA, required=True, help="Target shape.")
@click.option("--c", "c", type=SCALE, default=1.0, show_default=True)
@click.option("--gnc", is_flag=True, help="Anneal alpha from 2 to the target.")
@click.option("--steps", type=click.IntRange(min=1), default=4, show_default=True, help="GNC stages.")
@click.option("--max-iters", type=click.IntRange(min=1), default=100, show_default=True)
@click.option("--param-tol", type=float, default=1e-10, show_default=True)
@click.option("--ridge", type=float, default=1e-12, show_default=True)
@click.pass_context
def fit_cmd(ctx, csv_path, alpha, c, gnc, steps, max_iters, param_tol, ridge):
    """Robust linear regression on CSV_PATH (last column is the target)."""
    try:
        dataset = read_csv(csv_path)
        config = estimation.IRLSConfig(max_iters=max_iters, param_tol=param_tol, ridge=ridge)
        if gnc:
            report = estimation.gnc_fit(dataset, estimation.make_linear_schedule(alpha, steps, c), config)
        else:
            report = estimation.irls_fit(dataset, LossParams(alpha, c), config)
    except (ValueError, estimation.FitError) as exc:
        click.echo(f"error: {exc}", err=True)
        ctx.exit(1)
    for w in report.warnings:
        click.echo(f"warning: {w}", err=True)
    click.echo(render_fit(report), nl=False)
    ctx.exit(0 if report.converged else 2)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run the CLI and return its exit code; usage errors map to 1."""
    try:
        rv = cli.main(args=list(argv) if argv is not None else None, prog_name="robustloss", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.Abort:
        click.echo("aborted", err=True)
        return 1
    return rv if isinstance(rv, int) else 0


def main_entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
