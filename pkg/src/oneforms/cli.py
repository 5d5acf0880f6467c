"""Command-line surface.

Exit codes: 0 success, 1 finished with a computation warning (window
cap reached before stabilization), 2 invalid input or usage.
"""

from __future__ import annotations

import math
import sys
from pathlib import Path

import click

from . import __version__
from .barcodes import analyze
from .complexes import Cocycle
from .dataio import (
    dump_complex_cocycle,
    dump_metric_data,
    load_complex_cocycle,
    load_metric_data,
    write_json,
    write_rows_csv,
)
from .errors import OneformsError
from .fixtures import FIXTURES, build_fixture
from .geometrize import MetricData, epsilon_max, geometrize_pipeline
from .metrics import stability_experiment
from .plotting import plot_report_dict

STABILITY_COLUMNS = ["trial", "eps", "degree", "d_delta", "d_gamma",
                     "modulus"]


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(2)


def _common(fn):
    fn = click.option("--field", default=2, show_default=True,
                      help="prime coefficient field")(fn)
    fn = click.option("--r-max", default=None, type=int,
                      help="top homology degree (default: dim of complex)")(fn)
    fn = click.option("--window", "window_start", default=1,
                      show_default=True, help="starting window radius")(fn)
    fn = click.option("--window-max", default=8, show_default=True,
                      help="window radius cap for stabilization")(fn)
    fn = click.option("--tol", default=None, type=float,
                      help="embed collision tolerance (overrides file)")(fn)
    fn = click.option("--delta-sign", default="formula",
                      type=click.Choice(["formula", "figure"]),
                      show_default=True,
                      help="sign convention for line-configuration "
                           "locations")(fn)
    fn = click.option("--seed", default=0, show_default=True,
                      help="RNG seed, recorded in the report")(fn)
    fn = click.option("--out", "out_dir", default=".", show_default=True,
                      help="output directory")(fn)
    return fn


def _run_config(command: str, input_path, **kw) -> dict:
    cfg = {"command": command, "input": str(input_path),
           "version": __version__}
    cfg.update({k: v for k, v in sorted(kw.items())})
    return cfg


@click.group()
@click.version_option(__version__)
def main():
    """Barcode configurations of simplicial one-cocycles."""


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@_common
@click.option("--plot", "do_plot", is_flag=True,
              help="also render one SVG per degree")
@click.option("--dump-cover", is_flag=True,
              help="also dump the stabilized windowed covers as JSON")
def compute(input_file, field, r_max, window_start, window_max, tol,
            delta_sign, seed, out_dir, do_plot, dump_cover):
    """Compute the barcode report of a complex + cocycle file."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(input_file).stem
    try:
        kx, c = load_complex_cocycle(input_file, tol)
        cfg = _run_config("compute", input_file, field=field, r_max=r_max,
                          window=window_start, window_max=window_max,
                          tol=tol, delta_sign=delta_sign, seed=seed)
        report = analyze(kx, c, field=field, r_max=r_max,
                         window_start=window_start, window_max=window_max,
                         delta_sign=delta_sign, run_config=cfg)
    except OneformsError as exc:
        _fail(str(exc))
    doc = report.to_json_dict()
    report_path = out / f"{stem}_report.json"
    write_json(doc, report_path)
    click.echo(f"report: {report_path}")
    if dump_cover:
        cover_path = out / f"{stem}_cover.json"
        write_json([res for res in doc["windows"]], cover_path)
        click.echo(f"windows: {cover_path}")
    if do_plot:
        for p in plot_report_dict(doc, out, stem):
            click.echo(f"plot: {p}")
    if not report.stabilized:
        click.echo("warning: window cap reached before stabilization",
                   err=True)
        sys.exit(1)


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@_common
def duality(input_file, field, r_max, window_start, window_max, tol,
            delta_sign, seed, out_dir):
    """Check the mirror identities between complementary degrees.

    The input must be certified by the user as a closed triangulated
    manifold; the tool verifies the pseudo-manifold condition and then
    compares the line configurations of degree r against the mirrored
    degree n-r, and the half-line configurations of degree r for the
    cocycle against degree n-1-r for its negative.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(input_file).stem
    try:
        kx, c = load_complex_cocycle(input_file, tol)
        ok, witness = kx.is_pseudomanifold()
        if not ok:
            _fail(f"not a pseudo-manifold: face {witness} does not lie in "
                  "exactly two top cells")
        n = kx.dim
        cfg = _run_config("duality", input_file, field=field, r_max=r_max,
                          window=window_start, window_max=window_max,
                          tol=tol, delta_sign=delta_sign, seed=seed)
        neg = Cocycle(kx, c.basis, {e: -c.value(*e) for e in kx.edges})
        pos_rep = analyze(kx, c, field=field, r_max=n,
                          window_start=window_start, window_max=window_max,
                          delta_sign=delta_sign, run_config=cfg)
        neg_rep = analyze(kx, neg, field=field, r_max=n,
                          window_start=window_start, window_max=window_max,
                          delta_sign=delta_sign, run_config=cfg)
    except OneformsError as exc:
        _fail(str(exc))
    rows = []
    all_ok = True
    for r in range(n + 1):
        match = pos_rep.delta[r] == pos_rep.delta[n - r].mirror()
        rows.append({"identity": "line-mirror", "degree": r,
                     "dual_degree": n - r, "pass": bool(match)})
        all_ok &= match
    for r in range(n):
        match = pos_rep.gamma[r] == neg_rep.gamma[n - 1 - r]
        rows.append({"identity": "halfline-negated", "degree": r,
                     "dual_degree": n - 1 - r, "pass": bool(match)})
        all_ok &= match
    doc = {
        "schema": "oneforms-duality/1",
        "dimension": n,
        "verdicts": rows,
        "all_pass": bool(all_ok),
        "report": pos_rep.to_json_dict(),
        "report_negated": neg_rep.to_json_dict(),
    }
    path = out / f"{stem}_duality.json"
    write_json(doc, path)
    for row in rows:
        click.echo(f"{row['identity']} r={row['degree']} vs "
                   f"{row['dual_degree']}: "
                   f"{'PASS' if row['pass'] else 'FAIL'}")
    click.echo(f"verdicts: {path}")
    if not (pos_rep.stabilized and neg_rep.stabilized):
        click.echo("warning: window cap reached before stabilization",
                   err=True)
        sys.exit(1)


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@_common
@click.option("--eps", "eps_list", multiple=True, default=("0.1",),
              show_default=True, help="exact perturbation scale (rational)")
@click.option("--trials", default=20, show_default=True)
def stability(input_file, field, r_max, window_start, window_max, tol,
              delta_sign, seed, out_dir, eps_list, trials):
    """Random same-class perturbations; per-degree output distances."""
    from fractions import Fraction

    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(input_file).stem
    try:
        eps_values = [Fraction(e) for e in eps_list]
    except ValueError:
        _fail(f"--eps values must be exact rationals, got {eps_list}")
    try:
        kx, c = load_complex_cocycle(input_file, tol)
        rows = stability_experiment(kx, c, eps_values, trials, seed,
                                    field=field, r_max=r_max,
                                    window_max=window_max)
    except OneformsError as exc:
        _fail(str(exc))
    path = out / f"{stem}_stability.csv"
    write_rows_csv(rows, path, STABILITY_COLUMNS)
    worst = max((row["modulus"] for row in rows), default=0.0)
    click.echo(f"table: {path}")
    click.echo(f"empirical modulus: {worst}")


@main.command()
@click.argument("input_file", type=click.Path(exists=True, dir_okay=False))
@_common
@click.option("--scale", "scales", multiple=True, type=float, required=True,
              help="Rips scale(s), each strictly below the admissible max")
@click.option("--dim-cap", default=3, show_default=True)
@click.option("--plot", "do_plot", is_flag=True)
def geometrize(input_file, field, r_max, window_start, window_max, tol,
               delta_sign, seed, out_dir, scales, dim_cap, do_plot):
    """Metric data -> Rips complex -> induced cocycle -> barcode reports."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(input_file).stem
    try:
        md = load_metric_data(input_file, tol)
        cfg = _run_config("geometrize", input_file, field=field,
                          r_max=r_max, window=window_start,
                          window_max=window_max, tol=tol,
                          delta_sign=delta_sign, seed=seed,
                          scales=list(scales), dim_cap=dim_cap)
        results = geometrize_pipeline(md, scales, field=field,
                                      dim_cap=dim_cap, r_max=r_max,
                                      window_max=window_max, run_config=cfg)
    except OneformsError as exc:
        _fail(str(exc))
    e_max = epsilon_max(md)
    click.echo("admissible scale maximum: "
               f"{'unbounded' if math.isinf(e_max) else e_max}")
    warn = False
    for i, (eps, rep) in enumerate(results):
        rep.delta_sign = delta_sign
        doc = rep.to_json_dict()
        path = out / f"{stem}_scale{i}_report.json"
        write_json(doc, path)
        click.echo(f"scale {eps}: {path}")
        if do_plot:
            for p in plot_report_dict(doc, out, f"{stem}_scale{i}"):
                click.echo(f"plot: {p}")
        warn |= not rep.stabilized
    if warn:
        click.echo("warning: window cap reached before stabilization",
                   err=True)
        sys.exit(1)


@main.command()
@click.argument("name")
@click.option("--out", "out_dir", default=".", show_default=True)
def generate(name, out_dir):
    """Write a canonical example input file (complex or metric data)."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    try:
        built = build_fixture(name)
    except OneformsError as exc:
        _fail(str(exc))
    if isinstance(built, MetricData):
        path = out / f"{name}.csv"
        dump_metric_data(built, path)
    else:
        kx, c = built
        path = out / f"{name}.json"
        dump_complex_cocycle(kx, c, path)
    click.echo(f"wrote: {path}")


@main.command("plot")
@click.argument("report_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--out", "out_dir", default=".", show_default=True)
def plot_cmd(report_file, out_dir):
    """Render SVGs from an existing report JSON."""
    import json

    try:
        doc = json.loads(Path(report_file).read_text())
    except json.JSONDecodeError as exc:
        _fail(f"{report_file}: invalid JSON ({exc})")
    if "degrees" not in doc:
        _fail(f"{report_file}: not a report file (no 'degrees' key)")
    stem = Path(report_file).stem
    for p in plot_report_dict(doc, out_dir, stem):
        click.echo(f"plot: {p}")


if __name__ == "__main__":
    main()
