"""End-to-end command line behavior through click's test runner."""

from __future__ import annotations

import json

import pytest
from click.testing import CliRunner

from kgmend import GraphStore, PredictionRecord, Tuple, save_graph
from kgmend.cli import main
from kgmend.repair import write_predictions

from conftest import DATA, GOLDEN


@pytest.fixture
def runner() -> CliRunner:
    return CliRunner()


def support_graph_file(tmp_path, occurrences=3):
    g = GraphStore()
    for i in range(occurrences):
        g.add_tuple(Tuple(f"a{i}", "r", f"b{i}"))
        g.add_tuple(Tuple(f"a{i}", "q", f"x{i}"))
    g.add_tuple(Tuple("h", "q", "xh"))
    path = tmp_path / "graph.tsv"
    save_graph(g, path)
    return path


def predictions_file(tmp_path, records):
    path = tmp_path / "preds.jsonl"
    write_predictions(records, path)
    return path


def test_embed_reproduces_golden_file(runner):
    result = runner.invoke(main, [
        "embed", "--graph", str(DATA / "fixture_b.tsv"),
        "--head", "India", "--relation", "C", "--tail", "Gorakhpur", "--l", "1",
    ])
    assert result.exit_code == 0
    assert result.stdout_bytes == (GOLDEN / "fixture_b_l1.txt").read_bytes()


def test_embed_announces_neighborhood_on_stderr(runner):
    result = runner.invoke(main, [
        "embed", "--graph", str(DATA / "fixture_b.tsv"),
        "--head", "India", "--relation", "C", "--tail", "Gorakhpur", "--l", "1",
        "--neighborhood", "intersection",
    ])
    assert result.exit_code == 0
    assert "intersection" in result.stderr


def test_validate_emits_one_json_line_per_tuple(runner, tmp_path):
    graph = support_graph_file(tmp_path)
    tuples = tmp_path / "cand.tsv"
    tuples.write_text("h\tr\tt\nghost\tr\tnowhere\n")
    result = runner.invoke(main, [
        "validate", "--graph", str(graph), "--tuples", str(tuples),
        "--l", "1", "--sample-size", "4",
    ])
    assert result.exit_code == 0
    rows = [json.loads(line) for line in result.stdout.splitlines()]
    assert [row["status"] for row in rows] == ["Valid", "Unknown"]
    assert rows[0]["support"] >= 1


def test_validate_rejects_na_tuples_with_exit_two(runner, tmp_path):
    graph = support_graph_file(tmp_path)
    tuples = tmp_path / "cand.tsv"
    tuples.write_text("h\tNA\tt\n")
    result = runner.invoke(main, [
        "validate", "--graph", str(graph), "--tuples", str(tuples),
    ])
    assert result.exit_code == 2
    assert "line 1" in result.stderr


def test_malformed_graph_exits_two(runner, tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("only-one-field\n")
    result = runner.invoke(main, ["stats", "--graph", str(bad)])
    assert result.exit_code == 2


def test_bad_config_value_exits_two(runner, tmp_path):
    graph = support_graph_file(tmp_path)
    tuples = tmp_path / "cand.tsv"
    tuples.write_text("h\tr\tt\n")
    result = runner.invoke(main, [
        "validate", "--graph", str(graph), "--tuples", str(tuples), "--l", "0",
    ])
    assert result.exit_code == 2


def test_stats_reports_counts(runner, tmp_path):
    graph = support_graph_file(tmp_path)
    result = runner.invoke(main, ["stats", "--graph", str(graph)])
    assert result.exit_code == 0
    payload = json.loads(result.stdout)
    assert payload["edges"] == 7
    assert payload["vertices"] == 11
    assert payload["relations"] == 2
    assert payload["d_max"] == 2


def test_predict_links_outputs_probabilities(runner, tmp_path):
    graph = support_graph_file(tmp_path)
    tuples = tmp_path / "cand.tsv"
    tuples.write_text("h\tr\tt\nghost\tr\tnowhere\n")
    result = runner.invoke(main, [
        "predict-links", "--graph", str(graph), "--tuples", str(tuples),
        "--l", "1", "--sample-size", "4",
    ])
    assert result.exit_code == 0
    rows = [json.loads(line) for line in result.stdout.splitlines()]
    assert rows[0]["link"] == 1.0
    assert rows[1]["link"] == 0.0


def test_inject_errors_roundtrip(runner, tmp_path):
    records = [
        PredictionRecord(f"r{i}", f"h{i}", f"t{i}", (("a", 0.8), ("b", 0.5)))
        for i in range(20)
    ]
    preds = predictions_file(tmp_path, records)
    out = tmp_path / "perturbed.jsonl"
    result = runner.invoke(main, [
        "inject-errors", "--predictions", str(preds),
        "--rate", "1.0", "--seed", "3", "--out", str(out),
    ])
    assert result.exit_code == 0
    lines = [json.loads(line) for line in out.read_text().splitlines()]
    assert all(row["candidates"][0]["relation"] == "b" for row in lines)
    assert all(row["candidates"][0]["p"] == 0.8 for row in lines)


def test_inject_errors_rejects_bad_rate(runner, tmp_path):
    preds = predictions_file(tmp_path, [
        PredictionRecord("r0", "h", "t", (("a", 0.8),)),
    ])
    result = runner.invoke(main, [
        "inject-errors", "--predictions", str(preds), "--rate", "1.5",
    ])
    assert result.exit_code == 2


def test_detect_errors_scores_labeled_facts(runner, tmp_path):
    graph = support_graph_file(tmp_path)
    facts = tmp_path / "facts.tsv"
    facts.write_text("h\tr\tt\t1\nghost\tr\tnowhere\t0\n")
    result = runner.invoke(main, [
        "detect-errors", "--graph", str(graph), "--facts", str(facts),
        "--l", "1", "--sample-size", "4",
    ])
    assert result.exit_code == 0
    report = json.loads(result.stdout)
    assert report["tp"] == 1 and report["tn"] == 1
    assert report["f_score"] == 1.0


def test_enhance_writes_decisions_graph_and_metrics(runner, tmp_path):
    graph = support_graph_file(tmp_path)
    records = [PredictionRecord("n1", "h", "t", (("wrong", 0.8), ("r", 0.5)))]
    preds = predictions_file(tmp_path, records)
    decisions_path = tmp_path / "decisions.jsonl"
    out_graph = tmp_path / "enhanced.tsv"
    metrics = tmp_path / "metrics.jsonl"
    result = runner.invoke(main, [
        "enhance", "--graph", str(graph), "--predictions", str(preds),
        "--l", "1", "--sample-size", "4",
        "--out-decisions", str(decisions_path),
        "--out-graph", str(out_graph), "--metrics", str(metrics),
    ])
    assert result.exit_code == 0
    decision = json.loads(decisions_path.read_text())
    assert decision["status"] == "Repaired"
    assert decision["final"] == "r"
    assert "h\tr\tt" in out_graph.read_text().splitlines()
    slice_row = json.loads(metrics.read_text())
    assert slice_row["counts"]["Repaired"] == 1
    assert slice_row["malformed"] == 0
    assert "Repaired: 1" in result.stderr


def test_enhance_counts_malformed_lines_without_aborting(runner, tmp_path):
    graph = support_graph_file(tmp_path)
    preds = tmp_path / "preds.jsonl"
    preds.write_text('not json at all\n'
                     '{"id": "n1", "head": "h", "tail": "t",'
                     ' "candidates": [{"relation": "r", "p": 0.9}]}\n')
    metrics = tmp_path / "metrics.jsonl"
    result = runner.invoke(main, [
        "enhance", "--graph", str(graph), "--predictions", str(preds),
        "--l", "1", "--sample-size", "4", "--metrics", str(metrics),
    ])
    assert result.exit_code == 0
    assert json.loads(metrics.read_text())["malformed"] == 1


def test_enhance_uses_auxiliary_graph_for_cold_labels(runner, tmp_path):
    g = GraphStore()
    g.add_tuple(Tuple("h", "q", "xh"))
    graph = tmp_path / "graph.tsv"
    save_graph(g, graph)
    aux_lines = []
    for i in range(12):
        aux_lines.append(f"A{i}\txr\tB{i}\n")
        aux_lines.append(f"A{i}\txq\tX{i}\n")
    aux = tmp_path / "aux.tsv"
    aux.write_text("".join(aux_lines))
    label_map = tmp_path / "map.tsv"
    label_map.write_text("xr\tr\nxq\tq\n")
    preds = predictions_file(tmp_path, [
        PredictionRecord("n1", "h", "t", (("r", 0.9),)),
    ])
    decisions_path = tmp_path / "decisions.jsonl"
    result = runner.invoke(main, [
        "enhance", "--graph", str(graph), "--predictions", str(preds),
        "--l", "1", "--sample-size", "4",
        "--aux-graph", str(aux), "--label-map", str(label_map),
        "--out-decisions", str(decisions_path),
    ])
    assert result.exit_code == 0
    assert json.loads(decisions_path.read_text())["status"] == "Accepted"
