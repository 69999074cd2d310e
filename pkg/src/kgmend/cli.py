"""Command line entry points for graph enhancement and its diagnostics."""

from __future__ import annotations

import json

import click

from .embedding import format_embedding, traverse_r
from .evalkit import detect_errors, inject_errors, read_labeled_facts
from .graph_store import (
    GraphFormatError,
    GraphStore,
    NALabelError,
    Tuple,
    load_graph,
    read_tuples,
    save_graph,
)
from .patterns import NEIGHBORHOODS, extract_pattern
from .repair import (
    PredictionFormatError,
    RepairConfig,
    iter_prediction_lines,
    predict_link,
    read_predictions,
    write_predictions,
)
from .stream import integrate_aux, load_label_map
from .stream import run as run_stream
from .validation import ValidationConfig, classify

_INPUT_ERRORS = (GraphFormatError, NALabelError, PredictionFormatError)

_FILE_IN = click.Path(exists=True, dir_okay=False)
_FILE_OUT = click.Path(dir_okay=False, writable=True)


def _usage(exc: Exception) -> click.UsageError:
    return click.UsageError(str(exc))


def _mode(sort_paths: str) -> str:
    return "sorted" if sort_paths == "on" else "positional"


def validation_options(fn):
    opts = [
        click.option("--l", "l", type=int, default=2, show_default=True,
                     help="Pattern radius."),
        click.option("--sample-size", type=int, default=10, show_default=True,
                     help="Occurrences sampled per relation label."),
        click.option("--theta", type=float, default=0.0, show_default=True,
                     help="Similarity threshold a witness must exceed."),
        click.option("--delta", type=int, default=1, show_default=True,
                     help="Witness count required for Valid."),
        click.option("--seed", type=int, default=0, show_default=True,
                     help="Sampling seed."),
        click.option("--edit-tolerance", type=int, default=0, show_default=True,
                     help="Label-token edits allowed when matching paths."),
        click.option("--sort-paths", type=click.Choice(["on", "off"]), default="on",
                     show_default=True, help="Order-insensitive path canonicalization."),
        click.option("--neighborhood", type=click.Choice(list(NEIGHBORHOODS)),
                     default="union", show_default=True,
                     help="Ball construction around pattern centers."),
    ]
    for opt in reversed(opts):
        fn = opt(fn)
    return fn


def _validation_config(l, sample_size, theta, delta, seed, edit_tolerance,
                       sort_paths, neighborhood) -> ValidationConfig:
    try:
        return ValidationConfig(
            l=l, theta=theta, delta=delta, sample_size=sample_size, seed=seed,
            edit_tolerance=edit_tolerance, mode=_mode(sort_paths),
            neighborhood=neighborhood,
        )
    except ValueError as exc:
        raise _usage(exc) from exc


def _announce_neighborhood(neighborhood: str) -> None:
    # keep stdout clean for machine-readable output
    click.echo(f"pattern neighborhood: {neighborhood} of endpoint balls", err=True)


def _load_graph(path) -> GraphStore:
    try:
        return load_graph(path)
    except _INPUT_ERRORS as exc:
        raise _usage(exc) from exc


@click.group()
@click.version_option(package_name="kgmend")
def main() -> None:
    """Validate and repair relation labels before merging tuples into a graph."""


@main.command()
@click.option("--graph", required=True, type=_FILE_IN, help="Committed graph TSV.")
@click.option("--predictions", required=True, type=_FILE_IN,
              help="Candidate tuples, JSON lines.")
@validation_options
@click.option("--k", type=int, default=5, show_default=True,
              help="Repair candidates considered per record.")
@click.option("--p-th", type=float, default=0.0, show_default=True,
              help="Probability floor for the initial instance.")
@click.option("--slice-size", type=int, default=1000, show_default=True)
@click.option("--unknown-policy", type=click.Choice(["accept", "hold", "reject"]),
              default="hold", show_default=True)
@click.option("--max-hold", type=int, default=3, show_default=True,
              help="Retries before a held record is closed out.")
@click.option("--workers", type=int, default=1, show_default=True,
              help="Threads per slice; results are identical at any count.")
@click.option("--aux-graph", type=_FILE_IN, help="Auxiliary graph TSV for cold labels.")
@click.option("--label-map", type=_FILE_IN, help="TSV aux_label<TAB>target_label.")
@click.option("--out-decisions", type=_FILE_OUT, help="Decision log, JSON lines.")
@click.option("--out-graph", type=_FILE_OUT, help="Enhanced graph TSV.")
@click.option("--metrics", type=_FILE_OUT, help="Per-slice metrics, JSON lines.")
def enhance(graph, predictions, l, sample_size, theta, delta, seed, edit_tolerance,
            sort_paths, neighborhood, k, p_th, slice_size, unknown_policy, max_hold,
            workers, aux_graph, label_map, out_decisions, out_graph, metrics):
    """Repair a prediction stream and commit the accepted tuples."""
    vcfg = _validation_config(l, sample_size, theta, delta, seed, edit_tolerance,
                              sort_paths, neighborhood)
    _announce_neighborhood(neighborhood)
    try:
        cfg = RepairConfig(k=k, p_th=p_th, unknown_policy=unknown_policy,
                           max_hold_iterations=max_hold, validation=vcfg)
    except ValueError as exc:
        raise _usage(exc) from exc
    if slice_size < 1 or workers < 1:
        raise click.UsageError("slice-size and workers must be at least 1")
    g = _load_graph(graph)
    if aux_graph:
        mapping = {}
        if label_map:
            try:
                mapping = load_label_map(label_map)
            except _INPUT_ERRORS as exc:
                raise _usage(exc) from exc
        integrate_aux(g, aux_graph, mapping)
    stream = iter_prediction_lines(predictions)
    log, results = run_stream(g, stream, cfg, slice_size=slice_size, workers=workers)
    if out_decisions:
        with open(out_decisions, "w", encoding="utf-8") as fh:
            for dec in log:
                fh.write(dec.to_json() + "\n")
    else:
        for dec in log:
            click.echo(dec.to_json())
    if out_graph:
        save_graph(g, out_graph)
    if metrics:
        with open(metrics, "w", encoding="utf-8") as fh:
            for res in results:
                fh.write(res.to_json() + "\n")
    counts: dict[str, int] = {}
    for dec in log:
        counts[dec.status] = counts.get(dec.status, 0) + 1
    summary = ", ".join(f"{status}: {n}" for status, n in sorted(counts.items()))
    click.echo(f"records: {len(log)} ({summary or 'none'})", err=True)


@main.command()
@click.option("--graph", required=True, type=_FILE_IN)
@click.option("--tuples", "tuples_path", required=True, type=_FILE_IN,
              help="Candidate tuples TSV.")
@validation_options
def validate(graph, tuples_path, l, sample_size, theta, delta, seed, edit_tolerance,
             sort_paths, neighborhood):
    """Classify each tuple as Valid, Invalid or Unknown."""
    vcfg = _validation_config(l, sample_size, theta, delta, seed, edit_tolerance,
                              sort_paths, neighborhood)
    _announce_neighborhood(neighborhood)
    g = _load_graph(graph)
    try:
        candidates = read_tuples(tuples_path)
    except _INPUT_ERRORS as exc:
        raise _usage(exc) from exc
    for s in candidates:
        report = classify(g, s, vcfg)
        click.echo(json.dumps({
            "head": s.head, "relation": s.relation, "tail": s.tail,
            "status": report.status, "support": report.support_count,
            "escalated": report.escalated, "heuristic": report.heuristic,
        }))


@main.command()
@click.option("--graph", required=True, type=_FILE_IN)
@click.option("--head", required=True)
@click.option("--relation", required=True)
@click.option("--tail", required=True)
@click.option("--l", "l", type=int, default=2, show_default=True)
@click.option("--sort-paths", type=click.Choice(["on", "off"]), default="on",
              show_default=True)
@click.option("--neighborhood", type=click.Choice(list(NEIGHBORHOODS)),
              default="union", show_default=True)
def embed(graph, head, relation, tail, l, sort_paths, neighborhood):
    """Print the path embedding of one center tuple, one path per line."""
    _announce_neighborhood(neighborhood)
    g = _load_graph(graph)
    try:
        pattern = extract_pattern(g, Tuple(head, relation, tail), l,
                                  neighborhood=neighborhood)
        emb = traverse_r(pattern, l, mode=_mode(sort_paths))
    except (ValueError, NALabelError) as exc:
        raise _usage(exc) from exc
    click.echo(format_embedding(emb), nl=False)


@main.command("predict-links")
@click.option("--graph", required=True, type=_FILE_IN)
@click.option("--tuples", "tuples_path", required=True, type=_FILE_IN)
@validation_options
def predict_links(graph, tuples_path, l, sample_size, theta, delta, seed,
                  edit_tolerance, sort_paths, neighborhood):
    """Print linkage probabilities for candidate tuples."""
    vcfg = _validation_config(l, sample_size, theta, delta, seed, edit_tolerance,
                              sort_paths, neighborhood)
    _announce_neighborhood(neighborhood)
    g = _load_graph(graph)
    try:
        candidates = read_tuples(tuples_path)
    except _INPUT_ERRORS as exc:
        raise _usage(exc) from exc
    for s in candidates:
        link = predict_link(g, s.head, s.tail, s.relation, vcfg)
        click.echo(json.dumps({
            "head": s.head, "relation": s.relation, "tail": s.tail, "link": link,
        }))


@main.command("inject-errors")
@click.option("--predictions", required=True, type=_FILE_IN)
@click.option("--rate", type=float, required=True, help="Fraction of records to swap.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=_FILE_OUT, help="Perturbed records; stdout when omitted.")
def inject_errors_cmd(predictions, rate, seed, out):
    """Swap Top-1 and Top-2 labels for a seeded fraction of records."""
    try:
        records = read_predictions(predictions)
        perturbed = inject_errors(records, rate, seed)
    except (PredictionFormatError, ValueError) as exc:
        raise _usage(exc) from exc
    if out:
        write_predictions(perturbed, out)
    else:
        for rec in perturbed:
            click.echo(json.dumps({
                "id": rec.id, "head": rec.head, "tail": rec.tail,
                "candidates": [{"relation": lab, "p": p} for lab, p in rec.candidates],
            }))


@main.command("detect-errors")
@click.option("--graph", required=True, type=_FILE_IN)
@click.option("--facts", required=True, type=_FILE_IN,
              help="TSV head<TAB>relation<TAB>tail<TAB>1|0.")
@validation_options
@click.option("--unknown-true", is_flag=True,
              help="Count Unknown facts as predicted true.")
def detect_errors_cmd(graph, facts, l, sample_size, theta, delta, seed,
                      edit_tolerance, sort_paths, neighborhood, unknown_true):
    """Score truth detection over labeled held-out facts."""
    vcfg = _validation_config(l, sample_size, theta, delta, seed, edit_tolerance,
                              sort_paths, neighborhood)
    _announce_neighborhood(neighborhood)
    g = _load_graph(graph)
    try:
        labeled = read_labeled_facts(facts)
        report = detect_errors(g, labeled, vcfg, unknown_is_true=unknown_true)
    except (*_INPUT_ERRORS, ValueError) as exc:
        raise _usage(exc) from exc
    click.echo(report.to_json())


@main.command()
@click.option("--graph", required=True, type=_FILE_IN)
def stats(graph):
    """Print vertex, edge, relation and degree counts."""
    g = _load_graph(graph)
    d_max, vertices, edges = g.degree_stats()
    click.echo(json.dumps({
        "vertices": vertices, "edges": edges,
        "relations": len(g.relations()), "d_max": d_max,
    }))


if __name__ == "__main__":
    main()
