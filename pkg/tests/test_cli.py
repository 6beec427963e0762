"""End-to-end tests of the command-line surface."""

import json

import pytest

import permagraph as pg
from permagraph.cli import main
from permagraph.maxperm import DetectorConfig, detect


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_sections(text):
    """Split CSV output into sections of rows (sections separated by blank lines)."""
    sections = [[]]
    for line in text.splitlines():
        if not line:
            sections.append([])
        else:
            sections[-1].append(line.split(","))
    return [s for s in sections if s]


def csv_record(section, column):
    header, row = section[0], section[1]
    return row[header.index(column)]


@pytest.fixture
def ring_files(tmp_path, capsys):
    graph = tmp_path / "g.edges"
    truth = tmp_path / "g.truth"
    code = main(
        [
            "generate", "--kind", "ring", "--m", "10", "--k", "5",
            "--out", str(graph), "--truth", str(truth),
        ]
    )
    capsys.readouterr()
    assert code == 0
    return graph, truth


# --- exit codes -------------------------------------------------------------------

def test_no_subcommand_is_usage_error(capsys):
    code, _, err = run(capsys)
    assert code == 1
    assert "usage" in err


def test_unknown_flag_is_usage_error(capsys, ring_files):
    graph, truth = ring_files
    code, _, err = run(
        capsys, "score", "--graph", str(graph), "--partition", str(truth), "--bogus"
    )
    assert code == 1
    assert err


def test_missing_file_is_data_error_naming_the_path(capsys, tmp_path, ring_files):
    _, truth = ring_files
    missing = tmp_path / "absent.edges"
    code, _, err = run(
        capsys, "score", "--graph", str(missing), "--partition", str(truth)
    )
    assert code == 2
    assert str(missing) in err


def test_generate_missing_parameters_is_usage_error(capsys, tmp_path):
    code, _, err = run(
        capsys, "generate", "--kind", "ring", "--out", str(tmp_path / "g.edges")
    )
    assert code == 1
    assert "--m" in err


def test_invalid_values_are_data_errors(capsys, tmp_path):
    code, _, err = run(
        capsys, "generate", "--kind", "planted", "--blocks", "2", "--block-size", "3",
        "--p-in", "1.5", "--p-out", "0.0", "--out", str(tmp_path / "g.edges"),
    )
    assert code == 2
    assert err


def test_version_flag(capsys):
    code, out, _ = run(capsys, "--version")
    assert code == 0
    assert pg.__version__ in out


# --- round trip -------------------------------------------------------------------

def test_generate_score_detect_validate_round_trip(capsys, tmp_path, ring_files):
    graph, truth = ring_files
    assert graph.exists() and truth.exists()
    assert (tmp_path / "g.edges.manifest.json").exists()
    assert (tmp_path / "g.truth.manifest.json").exists()

    code, out, _ = run(capsys, "score", "--graph", str(graph), "--partition", str(truth))
    assert code == 0
    section = csv_sections(out)[0]
    assert csv_record(section, "permanence") == "0.92"
    assert csv_record(section, "clamped_vertices") == "0"
    assert csv_record(section, "size_weighted") == "false"

    detected = tmp_path / "d.part"
    code, out, _ = run(
        capsys, "detect", "--graph", str(graph), "--partition-out", str(detected)
    )
    assert code == 0
    summary = csv_sections(out)[1]
    assert csv_record(summary, "permanence") == "0.92"
    assert csv_record(summary, "converged") == "true"
    assert csv_record(summary, "communities") == "10"

    code, out, _ = run(
        capsys, "validate", "--graph", str(graph),
        "--truth", str(truth), "--detected", str(detected),
    )
    assert code == 0
    section = csv_sections(out)[0]
    for column in ("nmi", "ari", "purity", "weighted_nmi", "mean"):
        assert csv_record(section, column) == "1"

    # label-based validation needs no graph file
    code, out, _ = run(
        capsys, "validate", "--truth", str(truth), "--detected", str(detected)
    )
    assert code == 0
    section = csv_sections(out)[0]
    assert csv_record(section, "nmi") == "1"
    assert csv_record(section, "mean") == "1"


def test_validate_mismatched_labels_is_data_error(capsys, tmp_path):
    a = tmp_path / "a.part"
    b = tmp_path / "b.part"
    a.write_text("u 0\nv 0\n")
    b.write_text("u 0\nw 0\n")
    code, _, err = run(capsys, "validate", "--truth", str(a), "--detected", str(b))
    assert code == 2
    assert "labels" in err


# --- output formats ---------------------------------------------------------------

def test_json_output_is_sorted_and_parseable(capsys, ring_files):
    graph, truth = ring_files
    code, out, _ = run(
        capsys, "score", "--graph", str(graph), "--partition", str(truth),
        "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["report"]["permanence"] == pytest.approx(0.92, abs=1e-12)
    assert out == json.dumps(doc, indent=2, sort_keys=True) + "\n"


def test_per_vertex_csv_section(capsys, ring_files):
    graph, truth = ring_files
    code, out, _ = run(
        capsys, "score", "--graph", str(graph), "--partition", str(truth), "--per-vertex"
    )
    assert code == 0
    sections = csv_sections(out)
    assert len(sections) == 2
    vertex_rows = sections[1]
    assert vertex_rows[0] == ["vertex_label", "community", "I", "D", "Emax", "c_in", "permanence"]
    assert len(vertex_rows) == 1 + 50
    by_label = {row[0]: row for row in vertex_rows[1:]}
    g = pg.load_edge_list(graph.read_text()).graph
    p = pg.load_partition(truth.read_text(), g)
    for b in pg.permanence_breakdowns(g, p):
        row = by_label[g.labels[b.vertex]]
        assert int(row[1]) == p.assignment[b.vertex]
        assert float(row[6]) == pytest.approx(b.permanence, abs=1e-9)


def test_csv_floats_use_nine_significant_digits(capsys, tmp_path):
    graph = tmp_path / "blocks.edges"
    truth = tmp_path / "blocks.truth"
    code = main(
        [
            "generate", "--kind", "planted", "--blocks", "3", "--block-size", "4",
            "--p-in", "1.0", "--p-out", "0.0", "--out", str(graph), "--truth", str(truth),
        ]
    )
    capsys.readouterr()
    assert code == 0
    code, out, _ = run(capsys, "score", "--graph", str(graph), "--partition", str(truth))
    assert code == 0
    section = csv_sections(out)[0]
    assert csv_record(section, "modularity") == "0.666666667"
    assert csv_record(section, "permanence") == "1"


# --- manifests and reproducibility ------------------------------------------------

def test_manifest_records_inputs_flags_and_version(capsys, tmp_path, ring_files):
    graph, truth = ring_files
    out_path = tmp_path / "report.csv"
    code, _, _ = run(
        capsys, "score", "--graph", str(graph), "--partition", str(truth),
        "--out", str(out_path),
    )
    assert code == 0
    manifest = json.loads((tmp_path / "report.csv.manifest.json").read_text())
    assert set(manifest) == {
        "subcommand", "inputs", "flags", "rng_seed", "version", "duration_seconds",
    }
    assert manifest["subcommand"] == "score"
    assert manifest["version"] == pg.__version__
    assert manifest["flags"]["format"] == "csv"
    assert set(manifest["inputs"]) == {str(graph), str(truth)}
    for digest in manifest["inputs"].values():
        assert len(digest) == 64 and set(digest) <= set("0123456789abcdef")
    assert manifest["duration_seconds"] >= 0.0


def test_detect_outputs_are_byte_reproducible(capsys, tmp_path, ring_files):
    graph, _ = ring_files
    argv = [
        "detect", "--graph", str(graph), "--rng-seed", "7",
        "--partition-out", str(tmp_path / "d.part"),
        "--out", str(tmp_path / "d.csv"),
    ]
    assert main(list(argv)) == 0
    capsys.readouterr()
    first_part = (tmp_path / "d.part").read_bytes()
    first_csv = (tmp_path / "d.csv").read_bytes()
    first_manifest = json.loads((tmp_path / "d.csv.manifest.json").read_text())
    assert main(list(argv)) == 0
    capsys.readouterr()
    assert (tmp_path / "d.part").read_bytes() == first_part
    assert (tmp_path / "d.csv").read_bytes() == first_csv
    second_manifest = json.loads((tmp_path / "d.csv.manifest.json").read_text())
    first_manifest.pop("duration_seconds")
    second_manifest.pop("duration_seconds")
    assert first_manifest == second_manifest


def test_order_file_matches_library_vertex_order(capsys, tmp_path, ring_files):
    graph_path, _ = ring_files
    g = pg.load_edge_list(graph_path.read_text()).graph
    order = tuple(reversed(range(g.n)))
    order_file = tmp_path / "order.txt"
    order_file.write_text("\n".join(g.labels[v] for v in order) + "\n")
    code, out, _ = run(
        capsys, "detect", "--graph", str(graph_path), "--order-file", str(order_file)
    )
    assert code == 0
    want = detect(g, DetectorConfig(vertex_order=order))
    rows = csv_sections(out)[0]
    assert rows[0] == ["vertex_label", "community"]
    got = {row[0]: int(row[1]) for row in rows[1:]}
    assert got == {g.labels[v]: want.partition.assignment[v] for v in range(g.n)}


# --- remaining subcommands run to completion --------------------------------------

def test_perturb_and_sensitivity(capsys, ring_files):
    graph, truth = ring_files
    code, out, _ = run(
        capsys, "perturb", "--graph", str(graph), "--truth", str(truth),
        "--strategy", "edge_based", "--p-grid", "0.1,0.2", "--runs", "2",
    )
    assert code == 0
    rows = csv_sections(out)[0]
    assert rows[0][0] == "strategy"
    assert len(rows) == 3
    assert {row[0] for row in rows[1:]} == {"edge_based"}

    code, out, _ = run(
        capsys, "sensitivity", "--graph", str(graph), "--permutations", "3"
    )
    assert code == 0
    sections = csv_sections(out)
    assert sections[0][0] == ["permutation", "phi", "normalized_phi"]
    assert len(sections[0]) == 4
    assert sections[1][0] == ["constant_communities"]


def test_analyze_family_runs(capsys, tmp_path, ring_files):
    graph, truth = ring_files
    detected = tmp_path / "d.part"
    assert main(["detect", "--graph", str(graph), "--partition-out", str(detected)]) == 0
    capsys.readouterr()
    invocations = [
        ("histogram", "--graph", str(graph), "--partition", str(truth)),
        ("components", "--graph", str(graph), "--partition", str(truth)),
        ("strengthen", "--graph", str(graph), "--partition", str(truth),
         "--fractions", "0.2"),
        ("farness", "--graph", str(graph), "--partition", str(truth)),
        ("assortativity", "--graph", str(graph), "--partition", str(truth)),
        ("overlap", "--graph", str(graph), "--truth", str(truth),
         "--detected", str(detected)),
        ("sizes", "--graph", str(graph), "--truth", str(truth),
         "--detected", str(detected)),
        ("spread", "--graph", str(graph), "--partition", str(truth), "--runs", "3"),
        ("lemmas", "--alpha", "2", "--beta", "1"),
        ("growth", "--blocks", "2,4", "--block-size", "6",
         "--p-in", "1.0", "--p-out", "0.0"),
    ]
    for name, *flags in invocations:
        code, out, err = run(capsys, "analyze", name, *flags)
        assert code == 0, (name, err)
        assert out, name
        code, out, err = run(capsys, "analyze", name, *flags, "--format", "json")
        assert code == 0, (name, err)
        json.loads(out)


def test_analyze_histogram_values(capsys, ring_files):
    graph, truth = ring_files
    code, out, _ = run(
        capsys, "analyze", "histogram", "--graph", str(graph), "--partition", str(truth)
    )
    assert code == 0
    rows = csv_sections(out)[0]
    assert rows[0] == ["bin", "low", "high", "count", "fraction"]
    assert len(rows) == 21
    # ring(10, 5): 30 interior vertices at permanence 1.0, 20 bridges at 0.8
    counts = {row[0]: row[3] for row in rows[1:]}
    assert counts["20"] == "30"
    assert counts["19"] == "20"


def test_analyze_growth_values(capsys):
    code, out, _ = run(
        capsys, "analyze", "growth", "--blocks", "2,4", "--block-size", "6",
        "--p-in", "1.0", "--p-out", "0.0",
    )
    assert code == 0
    rows = csv_sections(out)[0]
    assert rows[0] == ["blocks", "n", "m", "modularity", "permanence"]
    assert rows[1] == ["2", "12", "30", "0.5", "1"]
    assert rows[2] == ["4", "24", "60", "0.75", "1"]


def test_analyze_lemmas_reports_cases_and_checks(capsys):
    code, out, _ = run(
        capsys, "analyze", "lemmas", "--alpha", "2", "--beta", "1", "--format", "json"
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["cases"]["join_a"] == pytest.approx(13.0 / 3.0, abs=1e-12)
    assert doc["cases"]["separate"] == pytest.approx(16.0 / 3.0, abs=1e-12)
    assert len(doc["checks"]) == 12
    applicable = {c["check"] for c in doc["checks"] if c["applicable"]}
    assert "switch_sparse" in applicable
    assert all(c["agree"] for c in doc["checks"] if c["applicable"])


def test_analyze_lemmas_flag_validation(capsys):
    code, _, err = run(
        capsys, "analyze", "lemmas", "--alpha", "2", "--beta", "1", "--size-a", "5"
    )
    assert code == 1
    assert "--size-b" in err
    code, _, err = run(
        capsys, "analyze", "lemmas", "--alpha", "2", "--beta", "1",
        "--wiring", "tight,sparse,tight",
    )
    assert code == 1
    code, _, err = run(
        capsys, "analyze", "lemmas", "--alpha", "0", "--beta", "1"
    )
    assert code == 2
