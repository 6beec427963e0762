"""Command-line entry point.

One executable routes to every operation: scoring, detection, validation,
perturbation sweeps, order sensitivity, the analysis family, and graph
generation. All subcommands share --format {csv,json} and --out; every
output file is accompanied by a <file>.manifest.json recording the
subcommand, flags, input digests, seed, version, and duration, so a run
can be replayed. All randomness flows from --rng-seed through named
derived streams; reruns with identical inputs and flags are byte-identical
(the manifest's duration field aside).

Exit codes: 0 success, 1 usage error, 2 data error (bad or missing files,
invalid values).
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .analysis import (
    OVERLAP_EDGES,
    SPREAD_SELECTORS,
    asymptotic_growth_study,
    bipartite_overlap,
    component_profile,
    farness_profile,
    permanence_assortativity,
    permanence_histogram,
    size_diagnostics,
    spreading_simulation,
    strengthen,
)
from .errors import GraphFormatError, PartitionError
from .graphs import (
    Graph,
    Partition,
    dump_edge_list,
    dump_partition,
    grid,
    load_edge_list,
    load_partition,
    planted_partition,
    ring_of_cliques,
)
from .lemmas import (
    WIRINGS,
    build_lemma_scenario,
    four_case_totals,
    lemma_check,
)
from .maxperm import (
    SEED_STRATEGIES,
    DetectorConfig,
    detect,
    sensitivity,
)
from .perturb import PERTURB_STRATEGIES, sweep
from .scoring import permanence_breakdowns, score_report
from .validation import ValidationReport, validation_report, ari, nmi, purity


class _UsageError(Exception):
    """Bad flags or flag combinations; exits 1."""


class _DataError(Exception):
    """Unreadable or invalid input data; exits 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse hook
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# Rendering
# ---------------------------------------------------------------------------

def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".9g")
    return str(value)


def _render_csv(sections: list[list[list]]) -> str:
    """Each section is a list of rows; sections are separated by one blank line."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for i, section in enumerate(sections):
        if i:
            buf.write("\n")
        for row in section:
            writer.writerow([_fmt(cell) for cell in row])
    return buf.getvalue()


def _render_json(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _manifest(args, inputs: list[str], started: float) -> dict:
    flags = {
        key: value
        for key, value in sorted(vars(args).items())
        if key not in ("func",) and not key.startswith("_")
    }
    return {
        "subcommand": getattr(args, "_subcommand", args.command),
        "inputs": {path: _sha256(path) for path in inputs},
        "flags": flags,
        "rng_seed": getattr(args, "rng_seed", None),
        "version": __version__,
        "duration_seconds": time.perf_counter() - started,
    }


def _write_output(path: str, text: str, args, inputs: list[str], started: float) -> None:
    Path(path).write_text(text)
    manifest_path = path + ".manifest.json"
    Path(manifest_path).write_text(_render_json(_manifest(args, inputs, started)))


def _emit(args, sections, doc, inputs: list[str], started: float) -> int:
    text = _render_json(doc) if args.format == "json" else _render_csv(sections)
    if args.out:
        _write_output(args.out, text, args, inputs, started)
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# Input loading
# ---------------------------------------------------------------------------

def _read_text(path: str) -> str:
    p = Path(path)
    try:
        return p.read_text()
    except FileNotFoundError:
        raise _DataError(f"missing file: {path}") from None
    except OSError as exc:
        raise _DataError(f"cannot read {path}: {exc}") from None


def _load_graph(path: str) -> Graph:
    return load_edge_list(_read_text(path)).graph


def _load_partition(path: str, graph: Graph) -> Partition:
    return load_partition(_read_text(path), graph)


def _load_order(path: str, graph: Graph) -> tuple[int, ...]:
    order = []
    for raw in _read_text(path).splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            order.append(graph.vertex_id(line))
    return tuple(order)


def _parse_floats(text: str, flag: str) -> list[float]:
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise _UsageError(f"{flag} expects a comma-separated list of numbers") from None
    if not values:
        raise _UsageError(f"{flag} must name at least one value")
    return values


def _parse_ints(text: str, flag: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise _UsageError(f"{flag} expects a comma-separated list of integers") from None
    if not values:
        raise _UsageError(f"{flag} must name at least one value")
    return values


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_generate(args, started) -> int:
    if args.kind == "ring":
        if args.m is None or args.k is None:
            raise _UsageError("--kind ring requires --m and --k")
        graph, truth = ring_of_cliques(args.m, args.k)
    elif args.kind == "grid":
        if args.rows is None or args.cols is None:
            raise _UsageError("--kind grid requires --rows and --cols")
        graph, truth = grid(args.rows, args.cols)
    else:
        needed = (args.blocks, args.block_size, args.p_in, args.p_out)
        if any(x is None for x in needed):
            raise _UsageError(
                "--kind planted requires --blocks, --block-size, --p-in, --p-out"
            )
        graph, truth = planted_partition(
            args.blocks, args.block_size, args.p_in, args.p_out, args.rng_seed
        )
    _write_output(args.out, dump_edge_list(graph), args, [], started)
    if args.truth:
        _write_output(args.truth, dump_partition(graph, truth), args, [], started)
    return 0


def _cmd_score(args, started) -> int:
    graph = _load_graph(args.graph)
    partition = _load_partition(args.partition, graph)
    report = score_report(graph, partition, size_weighted=args.size_weighted)
    header = list(report.__dataclass_fields__)
    sections = [[header, [getattr(report, f) for f in header]]]
    doc: dict = {"report": asdict(report)}
    if args.per_vertex:
        rows = [["vertex_label", "community", "I", "D", "Emax", "c_in", "permanence"]]
        verts = []
        for b in permanence_breakdowns(graph, partition):
            rows.append(
                [
                    graph.labels[b.vertex],
                    partition.assignment[b.vertex],
                    b.internal_degree,
                    b.degree,
                    b.max_external,
                    b.internal_cc,
                    b.permanence,
                ]
            )
            entry = asdict(b)
            entry["vertex_label"] = graph.labels[b.vertex]
            entry["community"] = partition.assignment[b.vertex]
            verts.append(entry)
        sections.append(rows)
        doc["vertices"] = verts
    return _emit(args, sections, doc, [args.graph, args.partition], started)


def _detect_config(args, graph: Graph) -> DetectorConfig:
    order = _load_order(args.order_file, graph) if args.order_file else None
    return DetectorConfig(
        seed_strategy=args.seed_strategy,
        max_iterations=args.max_iter,
        rng_seed=args.rng_seed,
        vertex_order=order,
        move_rule=args.move_rule,
        scan=args.scan,
    )


def _cmd_detect(args, started) -> int:
    graph = _load_graph(args.graph)
    result = detect(graph, _detect_config(args, graph))
    inputs = [args.graph] + ([args.order_file] if args.order_file else [])
    if args.partition_out:
        _write_output(
            args.partition_out, dump_partition(graph, result.partition), args, inputs, started
        )
    assignment_rows = [["vertex_label", "community"]]
    assignment_rows += [
        [graph.labels[v], result.partition.assignment[v]] for v in range(graph.n)
    ]
    summary_rows = [
        ["permanence", "iterations", "converged", "communities"],
        [
            result.permanence,
            result.iterations,
            result.converged,
            result.partition.n_communities,
        ],
    ]
    doc = {
        "assignment": {
            graph.labels[v]: result.partition.assignment[v] for v in range(graph.n)
        },
        "permanence": result.permanence,
        "iterations": result.iterations,
        "converged": result.converged,
        "communities": result.partition.n_communities,
        "sweep_sums": list(result.sweep_sums),
    }
    return _emit(args, [assignment_rows, summary_rows], doc, inputs, started)


def _cmd_validate(args, started) -> int:
    inputs = [args.truth, args.detected]
    if args.graph:
        inputs.insert(0, args.graph)
        graph = _load_graph(args.graph)
        truth = _load_partition(args.truth, graph)
        detected = _load_partition(args.detected, graph)
        report = validation_report(graph, truth, detected)
        header = list(ValidationReport.__dataclass_fields__) + ["mean"]
        row = [getattr(report, f) for f in ValidationReport.__dataclass_fields__]
        row.append(report.mean())
        doc = asdict(report)
        doc["mean"] = report.mean()
    else:
        truth_a, detected_a = _paired_assignments(args.truth, args.detected)
        truth_p, detected_p = Partition(truth_a), Partition(detected_a)
        values = {
            "nmi": nmi(truth_p, detected_p),
            "ari": ari(truth_p, detected_p),
            "purity": purity(detected_p, truth_p),
        }
        values["mean"] = sum(values.values()) / 3.0
        header = list(values)
        row = [values[k] for k in header]
        doc = values
    return _emit(args, [[header, row]], doc, inputs, started)


def _paired_assignments(truth_path: str, detected_path: str):
    """Parse two partition files over the same label set, no graph needed."""

    def parse(path: str) -> dict[str, str]:
        mapping: dict[str, str] = {}
        for lineno, raw in enumerate(_read_text(path).splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise PartitionError(
                    f"{path}:{lineno}: expected vertex and community labels"
                )
            if parts[0] in mapping:
                raise PartitionError(f"{path}:{lineno}: vertex {parts[0]!r} assigned twice")
            mapping[parts[0]] = parts[1]
        if not mapping:
            raise PartitionError(f"{path}: empty partition")
        return mapping

    truth_map = parse(truth_path)
    detected_map = parse(detected_path)
    if set(truth_map) != set(detected_map):
        raise PartitionError("partition files cover different vertex labels")
    labels = sorted(truth_map)
    truth_ids: dict[str, int] = {}
    detected_ids: dict[str, int] = {}
    truth_a = []
    detected_a = []
    for lab in labels:
        truth_a.append(truth_ids.setdefault(truth_map[lab], len(truth_ids)))
        detected_a.append(
            detected_ids.setdefault(detected_map[lab], len(detected_ids))
        )
    return truth_a, detected_a


def _cmd_perturb(args, started) -> int:
    graph = _load_graph(args.graph)
    truth = _load_partition(args.truth, graph)
    p_values = _parse_floats(args.p_grid, "--p-grid")
    strategies = args.strategy or list(PERTURB_STRATEGIES)
    header = [
        "strategy",
        "p",
        "modularity",
        "permanence",
        "conductance_complement",
        "cut_ratio_complement",
        "normalized_modularity",
        "normalized_permanence",
        "normalized_conductance_complement",
        "normalized_cut_ratio_complement",
        "mean_internal_degree",
        "mean_max_external",
        "mean_internal_cc",
        "exhausted_runs",
    ]
    rows = [header]
    sweeps = []
    for strategy in strategies:
        result = sweep(graph, truth, strategy, p_values, args.runs, args.rng_seed)
        sweeps.append(result)
        for i, point in enumerate(result.points):
            rows.append(
                [
                    result.strategy,
                    point.p,
                    point.modularity,
                    point.permanence,
                    point.conductance_complement,
                    point.cut_ratio_complement,
                    result.normalized_modularity[i],
                    result.normalized_permanence[i],
                    result.normalized_conductance_complement[i],
                    result.normalized_cut_ratio_complement[i],
                    point.mean_internal_degree,
                    point.mean_max_external,
                    point.mean_internal_cc,
                    point.exhausted_runs,
                ]
            )
    doc = [asdict(s) for s in sweeps]
    return _emit(args, [rows], doc, [args.graph, args.truth], started)


def _cmd_sensitivity(args, started) -> int:
    graph = _load_graph(args.graph)
    config = DetectorConfig(
        seed_strategy=args.seed_strategy,
        max_iterations=args.max_iter,
        rng_seed=args.rng_seed,
    )
    report = sensitivity(graph, config, permutations=args.permutations)
    rows = [["permutation", "phi", "normalized_phi"]]
    for i in range(report.permutation_count):
        rows.append([i + 1, report.phi_values[i], report.normalized_phi[i]])
    summary = [["constant_communities"], [report.n_constant]]
    doc = {
        "permutation_count": report.permutation_count,
        "phi_values": list(report.phi_values),
        "normalized_phi": list(report.normalized_phi),
        "constant_communities": [list(g) for g in report.constant_communities],
    }
    return _emit(args, [rows, summary], doc, [args.graph], started)


# --- analyze family ---------------------------------------------------------

def _cmd_histogram(args, started) -> int:
    graph = _load_graph(args.graph)
    partition = _load_partition(args.partition, graph)
    dist = permanence_histogram(graph, partition)
    rows = [["bin", "low", "high", "count", "fraction"]]
    for i, (low, high) in enumerate(dist.bin_edges()):
        rows.append([i + 1, low, high, dist.counts[i], dist.fractions[i]])
    doc = {"counts": list(dist.counts), "fractions": list(dist.fractions)}
    return _emit(args, [rows], doc, [args.graph, args.partition], started)


def _cmd_components(args, started) -> int:
    graph = _load_graph(args.graph)
    partition = _load_partition(args.partition, graph)
    profile = component_profile(graph, partition)
    header = [
        "bin",
        "count",
        "mean_internal_degree",
        "mean_degree",
        "mean_max_external",
        "mean_ratio",
        "mean_internal_cc",
    ]
    rows = [header] + [[getattr(r, f) for f in header] for r in profile]
    doc = [asdict(r) for r in profile]
    return _emit(args, [rows], doc, [args.graph, args.partition], started)


def _cmd_strengthen(args, started) -> int:
    graph = _load_graph(args.graph)
    partition = _load_partition(args.partition, graph)
    fractions = _parse_floats(args.fractions, "--fractions")
    result = strengthen(graph, partition, fractions)
    header = [
        "fraction",
        "removed",
        "communities_used",
        "communities_skipped",
        "mean_density_change_pct",
        "variance_density_change_pct",
    ]
    rows = [header] + [[getattr(r, f) for f in header] for r in result]
    doc = [asdict(r) for r in result]
    return _emit(args, [rows], doc, [args.graph, args.partition], started)


def _cmd_farness(args, started) -> int:
    graph = _load_graph(args.graph)
    partition = _load_partition(args.partition, graph)
    profile = farness_profile(graph, partition)
    rows = [["farness", "count", "mean_permanence"]]
    rows += [[r.farness, r.count, r.mean_permanence] for r in profile.rows]
    summary = [["excluded"], [profile.excluded]]
    doc = asdict(profile)
    return _emit(args, [rows, summary], doc, [args.graph, args.partition], started)


def _cmd_assortativity(args, started) -> int:
    graph = _load_graph(args.graph)
    partition = _load_partition(args.partition, graph)
    report = permanence_assortativity(graph, partition)
    header = list(report.__dataclass_fields__)
    rows = [header, [getattr(report, f) for f in header]]
    return _emit(args, [rows], asdict(report), [args.graph, args.partition], started)


def _cmd_overlap(args, started) -> int:
    graph = _load_graph(args.graph)
    truth = _load_partition(args.truth, graph)
    detected = _load_partition(args.detected, graph)
    report = bipartite_overlap(detected, truth)
    rows = [["bucket", "low", "high", "count", "fraction"]]
    fractions = report.bucket_fractions()
    bounds = list(OVERLAP_EDGES) + [0.0]
    for i in range(10):
        high = 1.0 if i == 0 else bounds[i - 1]
        rows.append([i + 1, bounds[i], high, report.bucket_counts[i], fractions[i]])
    summary = [["pairs"], [report.edges]]
    doc = {
        "bucket_counts": list(report.bucket_counts),
        "bucket_fractions": list(fractions),
        "pairs": report.edges,
    }
    inputs = [args.graph, args.truth, args.detected]
    return _emit(args, [rows, summary], doc, inputs, started)


def _cmd_sizes(args, started) -> int:
    graph = _load_graph(args.graph)
    truth = _load_partition(args.truth, graph)
    detected = _load_partition(args.detected, graph)
    diag = size_diagnostics(detected, truth)
    detected_rows = [["detected_community", "size"]]
    detected_rows += [[i, s] for i, s in enumerate(diag.detected_sizes)]
    truth_rows = [["truth_community", "size"]]
    truth_rows += [[i, s] for i, s in enumerate(diag.truth_sizes)]
    summary = [
        ["largest_detected", "best_truth", "best_jaccard"],
        [diag.largest_detected, diag.best_truth, diag.best_jaccard],
    ]
    inputs = [args.graph, args.truth, args.detected]
    return _emit(args, [detected_rows, truth_rows, summary], asdict(diag), inputs, started)


def _cmd_spread(args, started) -> int:
    graph = _load_graph(args.graph)
    truth = _load_partition(args.partition, graph)
    result = spreading_simulation(graph, truth, args.selector, args.runs, args.rng_seed)
    rows = [["run", "rounds"]]
    rows += [[i + 1, r] for i, r in enumerate(result.rounds)]
    summary = [
        ["selector", "runs", "mean_rounds", "mean_unreached"],
        [result.selector, result.runs, result.mean_rounds, result.mean_unreached],
    ]
    doc = asdict(result)
    return _emit(args, [rows, summary], doc, [args.graph, args.partition], started)


def _cmd_lemmas(args, started) -> int:
    wiring = args.wiring.split(",")
    if len(wiring) == 1:
        wiring = wiring[0]
    elif len(wiring) == 2:
        wiring = (wiring[0], wiring[1])
    else:
        raise _UsageError("--wiring expects one mode or two comma-separated modes")
    sizes = None
    if (args.size_a is None) != (args.size_b is None):
        raise _UsageError("--size-a and --size-b must be given together")
    if args.size_a is not None:
        sizes = (args.size_a, args.size_b)
    scenario = build_lemma_scenario(
        args.alpha,
        args.beta,
        wiring=wiring,
        sizes=sizes,
        rng_seed=args.relabel_seed,
        gadgets=(args.gadget_a, args.gadget_b),
    )
    result = four_case_totals(scenario)
    checks = lemma_check(scenario, zero_tol=args.zero_tol)
    case_rows = [["case", "exact_total", "closed_total"]]
    case_rows += [
        ["join_a", result.p_case1, result.closed_case1],
        ["join_b", result.p_case2, result.closed_case2],
        ["merge", result.p_case3, result.closed_case3],
        ["separate", result.p_case4, result.closed_case4],
    ]
    disc_rows = [
        ["z1", "z2", "x", "x_sparse_b"],
        [result.z1, result.z2, result.x, result.x_sparse_b],
    ]
    check_header = [
        "check",
        "applicable",
        "closed_value",
        "exact_difference",
        "predicted_sign",
        "oracle_sign",
        "agree",
        "reason",
    ]
    check_rows = [check_header] + [[getattr(c, f) for f in check_header] for c in checks]
    doc = {
        "cases": {
            "join_a": result.p_case1,
            "join_b": result.p_case2,
            "merge": result.p_case3,
            "separate": result.p_case4,
        },
        "closed": {
            "join_a": result.closed_case1,
            "join_b": result.closed_case2,
            "merge": result.closed_case3,
            "separate": result.closed_case4,
        },
        "discriminants": {
            "z1": result.z1,
            "z2": result.z2,
            "x": result.x,
            "x_sparse_b": result.x_sparse_b,
        },
        "symbols": asdict(result.symbols),
        "checks": [asdict(c) for c in checks],
    }
    return _emit(args, [case_rows, disc_rows, check_rows], doc, [], started)


def _cmd_growth(args, started) -> int:
    blocks = _parse_ints(args.blocks, "--blocks")
    rows_out = asymptotic_growth_study(
        blocks, args.block_size, args.p_in, args.p_out, args.rng_seed
    )
    header = ["blocks", "n", "m", "modularity", "permanence"]
    rows = [header] + [[getattr(r, f) for f in header] for r in rows_out]
    doc = [asdict(r) for r in rows_out]
    return _emit(args, [rows], doc, [], started)


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------

def _add_common(parser: _Parser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", help="write the result here instead of stdout")


def _add_seed(parser: _Parser) -> None:
    parser.add_argument("--rng-seed", type=int, default=0)


def build_parser() -> _Parser:
    parser = _Parser(prog="permagraph", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"permagraph {__version__}")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("generate", help="write a benchmark graph and its truth partition")
    p.add_argument("--kind", required=True, choices=("ring", "grid", "planted"))
    p.add_argument("--m", type=int, help="ring: number of cliques")
    p.add_argument("--k", type=int, help="ring: clique size")
    p.add_argument("--rows", type=int)
    p.add_argument("--cols", type=int)
    p.add_argument("--blocks", type=int)
    p.add_argument("--block-size", type=int)
    p.add_argument("--p-in", type=float)
    p.add_argument("--p-out", type=float)
    p.add_argument("--truth", help="also write the generator's partition here")
    p.add_argument("--out", required=True, help="edge-list output path")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_seed(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("score", help="score a partition on a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--per-vertex", action="store_true")
    p.add_argument("--size-weighted", action="store_true")
    _add_common(p)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("detect", help="run the permanence-maximizing detector")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed-strategy", choices=SEED_STRATEGIES, default="high_degree")
    p.add_argument("--max-iter", type=int, default=10)
    p.add_argument("--order-file", help="file of vertex labels fixing the sweep order")
    p.add_argument("--move-rule", choices=("both", "vertex-only"), default="both")
    p.add_argument("--scan", choices=("first-improvement", "keep-scanning"),
                   default="first-improvement")
    p.add_argument("--partition-out", help="also write the partition in native format")
    _add_common(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("validate", help="compare a detected partition with truth")
    p.add_argument("--truth", required=True)
    p.add_argument("--detected", required=True)
    p.add_argument("--graph", help="enables the degree-weighted metric variants")
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("perturb", help="score partitions under growing noise")
    p.add_argument("--graph", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--strategy", action="append", choices=PERTURB_STRATEGIES,
                   help="repeatable; default: all strategies")
    p.add_argument("--p-grid", default="0.1,0.2,0.3,0.4,0.5")
    p.add_argument("--runs", type=int, default=10)
    _add_common(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_perturb)

    p = sub.add_parser("sensitivity", help="detector stability across vertex orders")
    p.add_argument("--graph", required=True)
    p.add_argument("--permutations", type=int, default=20)
    p.add_argument("--seed-strategy", choices=SEED_STRATEGIES, default="high_degree")
    p.add_argument("--max-iter", type=int, default=10)
    _add_common(p)
    _add_seed(p)
    p.set_defaults(func=_cmd_sensitivity)

    analyze = sub.add_parser("analyze", help="analysis and experiment harnesses")
    asub = analyze.add_subparsers(dest="analysis", parser_class=_Parser)

    def apar(name: str, help_text: str) -> _Parser:
        q = asub.add_parser(name, help=help_text)
        q.set_defaults(_subcommand=f"analyze {name}")
        return q

    q = apar("histogram", "binned distribution of vertex permanence")
    q.add_argument("--graph", required=True)
    q.add_argument("--partition", required=True)
    _add_common(q)
    q.set_defaults(func=_cmd_histogram)

    q = apar("components", "permanence factor means per histogram bin")
    q.add_argument("--graph", required=True)
    q.add_argument("--partition", required=True)
    _add_common(q)
    q.set_defaults(func=_cmd_components)

    q = apar("strengthen", "density change after dropping weakest vertices")
    q.add_argument("--graph", required=True)
    q.add_argument("--partition", required=True)
    q.add_argument("--fractions", default="0.1,0.2,0.3,0.4,0.5")
    _add_common(q)
    q.set_defaults(func=_cmd_strengthen)

    q = apar("farness", "mean intra-community distance per vertex")
    q.add_argument("--graph", required=True)
    q.add_argument("--partition", required=True)
    _add_common(q)
    q.set_defaults(func=_cmd_farness)

    q = apar("assortativity", "within-community attribute correlation")
    q.add_argument("--graph", required=True)
    q.add_argument("--partition", required=True)
    _add_common(q)
    q.set_defaults(func=_cmd_assortativity)

    q = apar("overlap", "detected-vs-truth overlap weight histogram")
    q.add_argument("--graph", required=True)
    q.add_argument("--truth", required=True)
    q.add_argument("--detected", required=True)
    _add_common(q)
    q.set_defaults(func=_cmd_overlap)

    q = apar("sizes", "community size distributions and best-match check")
    q.add_argument("--graph", required=True)
    q.add_argument("--truth", required=True)
    q.add_argument("--detected", required=True)
    _add_common(q)
    q.set_defaults(func=_cmd_sizes)

    q = apar("spread", "message spreading rounds from per-community initiators")
    q.add_argument("--graph", required=True)
    q.add_argument("--partition", required=True)
    q.add_argument("--selector", choices=SPREAD_SELECTORS, default="permanence")
    q.add_argument("--runs", type=int, default=100)
    _add_common(q)
    _add_seed(q)
    q.set_defaults(func=_cmd_spread)

    q = apar("lemmas", "exact four-case bridge-vertex evaluation")
    q.add_argument("--alpha", type=int, required=True)
    q.add_argument("--beta", type=int, required=True)
    q.add_argument("--wiring", default="sparse",
                   help="one of %s, or side_a,side_b" % (WIRINGS,))
    q.add_argument("--size-a", type=int)
    q.add_argument("--size-b", type=int)
    q.add_argument("--gadget-a", default="clique",
                   choices=("clique", "cycle", "path", "empty"))
    q.add_argument("--gadget-b", default="clique",
                   choices=("clique", "cycle", "path", "empty"))
    q.add_argument("--relabel-seed", type=int, default=None)
    q.add_argument("--zero-tol", type=float, default=1e-9)
    _add_common(q)
    q.set_defaults(func=_cmd_lemmas)

    q = apar("growth", "graph scores as the number of planted blocks grows")
    q.add_argument("--blocks", default="4,8,16,32")
    q.add_argument("--block-size", type=int, default=25)
    q.add_argument("--p-in", type=float, default=0.8)
    q.add_argument("--p-out", type=float, default=0.0005)
    _add_common(q)
    _add_seed(q)
    q.set_defaults(func=_cmd_growth)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help / --version
        return 0 if exc.code in (None, 0) else 1
    if not hasattr(args, "func"):
        parser.print_usage(sys.stderr)
        return 1
    started = time.perf_counter()
    try:
        return args.func(args, started)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except _DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (GraphFormatError, PartitionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
