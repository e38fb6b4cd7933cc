"""Command-line entry point.

Single results are emitted as JSON (with a schema_version field), curves as
CSV.  Exit status: 0 success, 1 input error (bad flags, malformed files),
2 internal refusal (e.g. an exact solve beyond its size cap).
"""

from __future__ import annotations

import csv
import io
import json
import sys

import click

from . import bp, population
from .bpd import BpdConfig, bpd_run
from .errors import GmdsError, InputError, SizeLimitError
from .exact import exact_mds
from .generate import generate_er, named_weight_distribution
from .graph import load_graph, save_graph
from .summarize import METHODS, coverage_ratios, rouge1, summarize
from .text import load_lemma_map, load_word_set

SCHEMA_VERSION = 1

WEIGHT_FAMILIES = ("paper", "uniform", "mds-undirected", "mds-directed")


def _emit(data: dict, out: str | None) -> None:
    data = {"schema_version": SCHEMA_VERSION, **data}
    text = json.dumps(data, indent=2, sort_keys=True) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _emit_text(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _parse_grid(spec: str) -> list[float]:
    """Parse 'START:STOP:STEP' (inclusive stop, within float slack)."""
    try:
        start, stop, step = (float(x) for x in spec.split(":"))
    except ValueError:
        raise InputError(f"bad grid spec {spec!r}; expected START:STOP:STEP") from None
    if step <= 0 or stop < start:
        raise InputError("grid requires step > 0 and stop >= start")
    values = []
    k = 0
    while True:
        v = start + k * step
        if v > stop + 1e-9:
            break
        values.append(round(v, 12))
        k += 1
    return values


@click.group()
def cli():
    """Generalized dominating-set solvers and text summarization tools."""


@cli.command("gen-er")
@click.option("--n", type=int, required=True, help="number of vertices")
@click.option("--c", "mean_degree", type=float, required=True, help="mean degree")
@click.option("--weights", type=click.Choice(WEIGHT_FAMILIES), default="paper",
              show_default=True, help="edge weight family")
@click.option("--theta", type=float, default=1.0, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", type=click.Path(), required=True)
def gen_er_cmd(n, mean_degree, weights, theta, seed, out):
    """Generate an Erdos-Renyi instance file."""
    dist = named_weight_distribution(weights, theta)
    graph = generate_er(n, mean_degree, dist, seed, theta=theta)
    save_graph(graph, out)
    click.echo(f"wrote {graph.n_vertices} vertices / {graph.n_edges} edges to {out}")


@cli.command("solve-bp")
@click.option("--graph", "graph_path", type=click.Path(exists=True), required=True)
@click.option("--beta", type=float, required=True)
@click.option("--max-sweeps", type=int, default=1000, show_default=True)
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.option("--damping", type=float, default=0.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--grid", type=float, default=None, help="counting grid (default: scale/10)")
@click.option("--out", type=click.Path(), default=None)
def solve_bp_cmd(graph_path, beta, max_sweeps, tol, damping, seed, grid, out):
    """Run belief propagation at one beta and report densities."""
    graph = load_graph(graph_path)
    state, converged, residual = bp.run_bp(
        graph, beta, max_sweeps=max_sweeps, tol=tol, damping=damping,
        seed=seed, grid=grid)
    d = bp.densities(state)
    _emit({"beta": d.beta, "rho": d.rho, "f": None if d.f != d.f else d.f,
           "s": d.s, "converged": converged, "residual": residual,
           "sweeps": state.sweeps_done}, out)


@cli.command("scan-beta")
@click.option("--graph", "graph_path", type=click.Path(exists=True), required=True)
@click.option("--betas", required=True, help="grid as B1:B2:STEP")
@click.option("--max-sweeps", type=int, default=1000, show_default=True)
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.option("--damping", type=float, default=0.0, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--grid", type=float, default=None)
@click.option("--out", type=click.Path(), default=None)
def scan_beta_cmd(graph_path, betas, max_sweeps, tol, damping, seed, grid, out):
    """CSV of (beta, rho, f, s) plus a minimum-density summary line."""
    graph = load_graph(graph_path)
    schedule = _parse_grid(betas)
    points = bp.scan_beta(graph, schedule, max_sweeps=max_sweeps, tol=tol,
                          damping=damping, seed=seed, grid=grid)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["beta", "rho", "f", "s", "converged", "residual"])
    for d in points:
        writer.writerow([d.beta, d.rho, d.f, d.s, int(d.converged), d.residual])
    try:
        usable = []
        for d in points:
            if not d.converged:
                break
            usable.append(d)
            if d.s <= 0:
                break
        est = bp.rho0_from_points(usable)
        buf.write(f"# rho0={est.rho0:.6f} beta_at_zero={est.beta_at_zero:.4f} "
                  f"extrapolated={str(est.extrapolated).lower()}\n")
    except GmdsError as exc:
        buf.write(f"# rho0=nan ({exc})\n")
    _emit_text(buf.getvalue(), out)


@cli.command("bpd")
@click.option("--graph", "graph_path", type=click.Path(exists=True), required=True)
@click.option("--beta", type=float, default=8.0, show_default=True)
@click.option("--frac", type=float, default=0.01, show_default=True,
              help="fraction of candidates occupied per round")
@click.option("--sweeps", type=int, default=10, show_default=True,
              help="message sweeps per round")
@click.option("--tol", type=float, default=1e-7, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def bpd_cmd(graph_path, beta, frac, sweeps, tol, seed, out):
    """Construct a dominating set by decimation."""
    graph = load_graph(graph_path)
    cfg = BpdConfig(beta=beta, occupy_fraction=frac, bp_sweeps_per_round=sweeps,
                    tol=tol, seed=seed)
    result = bpd_run(graph, cfg)
    ds = result.dominating_set
    _emit({"members": sorted(ds.members), "size": ds.size,
           "relative_size": ds.relative_size, "rounds": result.rounds}, out)


@cli.command("rs-ensemble")
@click.option("--c", "mean_degree", type=float, required=True)
@click.option("--weights", type=click.Choice(WEIGHT_FAMILIES), default="paper",
              show_default=True)
@click.option("--theta", type=float, default=1.0, show_default=True)
@click.option("--beta-grid", required=True, help="grid as B1:B2:STEP")
@click.option("--pop-size", type=int, default=100_000, show_default=True)
@click.option("--equil-sweeps", type=int, default=1000, show_default=True)
@click.option("--extra-sweeps", type=int, default=200, show_default=True)
@click.option("--samples", type=int, default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def rs_ensemble_cmd(mean_degree, weights, theta, beta_grid, pop_size,
                    equil_sweeps, extra_sweeps, samples, seed, out):
    """Ensemble-averaged densities over a beta grid (population dynamics)."""
    dist = named_weight_distribution(weights, theta)
    schedule = _parse_grid(beta_grid)
    points = population.ensemble_scan(
        mean_degree, dist, schedule, theta=theta, pop_size=pop_size,
        equil_sweeps=equil_sweeps, extra_sweeps=extra_sweeps,
        n_samples=samples, seed=seed)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["beta", "rho", "rho_err", "f", "f_err", "s", "s_err"])
    for d in points:
        writer.writerow([d.beta, d.rho, d.rho_err, d.f, d.f_err, d.s, d.s_err])
    try:
        usable = []
        for d in points:
            usable.append(d)
            if d.s <= 0:
                break
        est = bp.rho0_from_points(usable)
        buf.write(f"# rho0={est.rho0:.6f} beta_at_zero={est.beta_at_zero:.4f} "
                  f"extrapolated={str(est.extrapolated).lower()}\n")
    except GmdsError as exc:
        buf.write(f"# rho0=nan ({exc})\n")
    _emit_text(buf.getvalue(), out)


@cli.command("rho0-curve")
@click.option("--c-grid", required=True, help="grid as C1:C2:STEP")
@click.option("--weights", type=click.Choice(WEIGHT_FAMILIES), default="paper",
              show_default=True)
@click.option("--theta", type=float, default=1.0, show_default=True)
@click.option("--beta-grid", default="1:12:0.5", show_default=True)
@click.option("--pop-size", type=int, default=100_000, show_default=True)
@click.option("--equil-sweeps", type=int, default=1000, show_default=True)
@click.option("--extra-sweeps", type=int, default=200, show_default=True)
@click.option("--samples", type=int, default=10_000, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def rho0_curve_cmd(c_grid, weights, theta, beta_grid, pop_size, equil_sweeps,
                   extra_sweeps, samples, seed, out):
    """CSV of (c, rho0): the minimum-density curve over mean degree."""
    cs = _parse_grid(c_grid)
    betas = _parse_grid(beta_grid)
    curve = population.rho0_curve(
        cs, lambda t: named_weight_distribution(weights, t), betas,
        theta=theta, pop_size=pop_size, equil_sweeps=equil_sweeps,
        extra_sweeps=extra_sweeps, n_samples=samples, seed=seed)
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["c", "rho0"])
    for c, rho0 in curve:
        writer.writerow([c, rho0])
    _emit_text(buf.getvalue(), out)


@cli.command("exact-mds")
@click.option("--graph", "graph_path", type=click.Path(exists=True), required=True)
@click.option("--out", type=click.Path(), default=None)
def exact_mds_cmd(graph_path, out):
    """Exact minimum dominating set (refuses instances beyond the size cap)."""
    graph = load_graph(graph_path)
    size, ds = exact_mds(graph)
    _emit({"size": size, "members": sorted(ds.members),
           "relative_size": ds.relative_size}, out)


@cli.command("summarize")
@click.option("--text", "text_path", type=click.Path(exists=True), required=True)
@click.option("--method", type=click.Choice(METHODS), default="bpd", show_default=True)
@click.option("--theta", type=float, default=1.0, show_default=True)
@click.option("--beta", type=float, default=8.0, show_default=True)
@click.option("--word-budget", type=int, default=None)
@click.option("--p", type=float, default=0.85, show_default=True,
              help="PageRank jump probability")
@click.option("--fraction", type=float, default=0.25, show_default=True,
              help="PageRank selection fraction")
@click.option("--self-pref", type=float, default=0.0, show_default=True,
              help="Affinity Propagation self preference")
@click.option("--damping", type=float, default=0.5, show_default=True,
              help="Affinity Propagation damping")
@click.option("--stopwords", "stopwords_path", type=click.Path(exists=True), default=None)
@click.option("--lemmas", "lemmas_path", type=click.Path(exists=True), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), default=None)
def summarize_cmd(text_path, method, theta, beta, word_budget, p, fraction,
                  self_pref, damping, stopwords_path, lemmas_path, seed, out):
    """Summarize a plain-text document."""
    with open(text_path, "r", encoding="utf-8") as fh:
        document = fh.read()
    stopwords = load_word_set(stopwords_path) if stopwords_path else None
    lemma_map = load_lemma_map(lemmas_path) if lemmas_path else None
    summary = summarize(document, method=method, theta=theta,
                        word_budget=word_budget, beta=beta, seed=seed, p=p,
                        fraction=fraction, self_preference=self_pref,
                        ap_damping=damping, stopwords=stopwords,
                        lemma_map=lemma_map)
    _emit({"method": summary.method, "theta": summary.theta,
           "selected_ids": list(summary.selected_ids),
           "sentences": list(summary.sentences),
           "total_words": summary.total_words,
           "n_sentences": summary.n_sentences,
           "word_budget": summary.word_budget,
           "params": summary.params}, out)


@cli.command("evaluate")
@click.option("--system", "system_path", type=click.Path(exists=True), required=True)
@click.option("--reference", "reference_paths", type=click.Path(exists=True),
              multiple=True, required=True)
@click.option("--metric", type=click.Choice(["rouge", "coverage"]), required=True)
@click.option("--out", type=click.Path(), default=None)
def evaluate_cmd(system_path, reference_paths, metric, out):
    """Score a system summary against reference summaries.

    For rouge, files are plain text.  For coverage, files carry sentence ids:
    either a summary JSON with a selected_ids field or whitespace-separated
    integers.
    """
    if metric == "rouge":
        with open(system_path, "r", encoding="utf-8") as fh:
            system_text = fh.read()
        refs = []
        for path in reference_paths:
            with open(path, "r", encoding="utf-8") as fh:
                refs.append(fh.read())
        result = rouge1(system_text, refs)
        _emit({"metric": "rouge1",
               "per_reference": [
                   {"recall": s.recall, "precision": s.precision, "fscore": s.fscore}
                   for s in result.per_reference],
               "recall": result.mean.recall,
               "precision": result.mean.precision,
               "fscore": result.mean.fscore}, out)
    else:
        system_ids = _read_id_set(system_path)
        if len(reference_paths) != 1:
            raise InputError("coverage expects exactly one reference id set")
        reference_ids = _read_id_set(reference_paths[0])
        r_cov, r_dif = coverage_ratios(system_ids, reference_ids)
        _emit({"metric": "coverage", "r_cov": r_cov, "r_dif": r_dif}, out)


def _read_id_set(path) -> set[int]:
    with open(path, "r", encoding="utf-8") as fh:
        content = fh.read()
    stripped = content.lstrip()
    if stripped.startswith("{"):
        data = json.loads(content)
        ids = data.get("selected_ids")
        if ids is None:
            raise InputError(f"{path}: JSON lacks a selected_ids field")
        return {int(x) for x in ids}
    try:
        return {int(tok) for tok in content.split()}
    except ValueError:
        raise InputError(f"{path}: expected whitespace-separated sentence ids") from None


def main(argv=None) -> int:
    """Dispatch with the documented exit-code contract."""
    try:
        cli.main(args=argv, standalone_mode=False)
        return 0
    except SizeLimitError as exc:
        click.echo(f"refused: {exc}", err=True)
        return 2
    except (InputError, GmdsError) as exc:
        click.echo(f"error: {exc}", err=True)
        return 1
    except click.UsageError as exc:
        exc.show()
        return 1
    except click.ClickException as exc:
        exc.show()
        return 1
    except click.exceptions.Abort:
        return 1


if __name__ == "__main__":
    sys.exit(main())
