"""Diagnostics built on top of vertex permanence.

Histograms, per-bin factor profiles, community strengthening, farness
profiles, assortativity, overlap diagnostics against ground truth, a
spreading-time simulation, and a growth study over planted graphs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import Graph, Partition, check_partition, edges_among, planted_partition
from .rng import derive_rng, derive_seed
from .scoring import (
    PermanenceBreakdown,
    graph_permanence,
    modularity,
    permanence_breakdowns,
)

BIN_COUNT = 20


def permanence_bin(value: float) -> int:
    """0-based histogram bin over [-1, 1] in 0.1 steps; top bin closed.

    Scaling by 10 keeps exact boundaries (multiples of 0.1) in the bin they
    open, which dividing by 0.1 does not.
    """
    return max(0, min(math.floor(value * 10.0) + 10, BIN_COUNT - 1))


@dataclass(frozen=True)
class BinnedDistribution:
    """Vertex mass per permanence bin; bin 1 is [-1, -0.9), bin 20 is [0.9, 1]."""

    counts: tuple[int, ...]
    fractions: tuple[float, ...]

    @property
    def bin_count(self) -> int:
        return len(self.counts)

    def bin_edges(self) -> tuple[tuple[float, float], ...]:
        return tuple((-1.0 + i * 0.1, -1.0 + (i + 1) * 0.1) for i in range(BIN_COUNT))


def permanence_histogram(graph: Graph, partition: Partition) -> BinnedDistribution:
    """Distribution of vertices over 20 equal permanence bins covering [-1, 1]."""
    counts = [0] * BIN_COUNT
    for b in permanence_breakdowns(graph, partition):
        counts[permanence_bin(b.permanence)] += 1
    return BinnedDistribution(
        counts=tuple(counts),
        fractions=tuple(c / graph.n for c in counts),
    )


@dataclass(frozen=True)
class ComponentProfileRow:
    """Mean permanence factors of the vertices falling into one bin.

    mean_ratio averages I / (D * E_max) over the bin's vertices that have
    at least one external edge; None when the bin has no such vertex.
    """

    bin: int
    count: int
    mean_internal_degree: float
    mean_degree: float
    mean_max_external: float
    mean_ratio: float | None
    mean_internal_cc: float


def component_profile(graph: Graph, partition: Partition) -> tuple[ComponentProfileRow, ...]:
    """Group vertices by permanence bin and average each factor per bin."""
    bins: dict[int, list[PermanenceBreakdown]] = {}
    for b in permanence_breakdowns(graph, partition):
        bins.setdefault(permanence_bin(b.permanence), []).append(b)
    rows = []
    for bin_idx in sorted(bins):
        members = bins[bin_idx]
        count = len(members)
        with_ext = [
            b.internal_degree / (b.degree * b.max_external)
            for b in members
            if b.max_external > 0
        ]
        rows.append(
            ComponentProfileRow(
                bin=bin_idx + 1,
                count=count,
                mean_internal_degree=sum(b.internal_degree for b in members) / count,
                mean_degree=sum(b.degree for b in members) / count,
                mean_max_external=sum(b.max_external for b in members) / count,
                mean_ratio=sum(with_ext) / len(with_ext) if with_ext else None,
                mean_internal_cc=sum(b.internal_cc for b in members) / count,
            )
        )
    return tuple(rows)


@dataclass(frozen=True)
class StrengthenRow:
    """Density change after dropping the weakest fraction of each community."""

    fraction: float
    removed: int
    communities_used: int
    communities_skipped: int
    mean_density_change_pct: float | None
    variance_density_change_pct: float | None


def strengthen(graph: Graph, partition: Partition, fractions) -> tuple[StrengthenRow, ...]:
    """Remove the lowest-permanence vertices per community, track density.

    For each fraction f, drops floor(f*|S|) members of each community in
    ascending permanence (dense rank, vertex id breaking ties) and reports
    the mean and population variance of the per-community percent change
    in internal edge density. Communities whose density is undefined or
    zero before/after removal are skipped and counted.
    """
    check_partition(graph, partition)
    breakdowns = permanence_breakdowns(graph, partition)
    values = sorted({b.permanence for b in breakdowns})
    rank = {value: i for i, value in enumerate(values)}
    order_key = [rank[b.permanence] for b in breakdowns]
    rows = []
    for f in fractions:
        if not 0.0 <= f <= 0.5:
            raise ValueError(f"removal fraction must lie in [0, 0.5], got {f}")
        changes = []
        skipped = 0
        removed_total = 0
        for cid in range(partition.n_communities):
            members = sorted(partition.members(cid), key=lambda v: (order_key[v], v))
            size = len(members)
            if size < 2:
                skipped += 1
                continue
            base = edges_among(graph, members) / (size * (size - 1) / 2)
            k = int(f * size)
            kept = members[k:]
            if len(kept) < 2 or base == 0.0:
                skipped += 1
                continue
            removed_total += k
            after = edges_among(graph, kept) / (len(kept) * (len(kept) - 1) / 2)
            changes.append((after - base) / base * 100.0)
        if changes:
            mean = sum(changes) / len(changes)
            var = sum((c - mean) ** 2 for c in changes) / len(changes)
        else:
            mean = None
            var = None
        rows.append(
            StrengthenRow(
                fraction=float(f),
                removed=removed_total,
                communities_used=len(changes),
                communities_skipped=skipped,
                mean_density_change_pct=mean,
                variance_density_change_pct=var,
            )
        )
    return tuple(rows)


@dataclass(frozen=True)
class FarnessRecord:
    vertex: int
    community: int
    farness: float | None
    permanence: float


@dataclass(frozen=True)
class FarnessRow:
    farness: float
    count: int
    mean_permanence: float


@dataclass(frozen=True)
class FarnessProfile:
    records: tuple[FarnessRecord, ...]
    rows: tuple[FarnessRow, ...]
    excluded: int


def farness_profile(graph: Graph, partition: Partition) -> FarnessProfile:
    """Mean intra-community distance per vertex, grouped by exact value.

    Distances run inside the induced community subgraph and average only
    over reachable co-members; vertices with none are excluded (counted).
    """
    check_partition(graph, partition)
    breakdowns = permanence_breakdowns(graph, partition)
    assignment = partition.assignment
    records = []
    groups: dict[float, list[float]] = {}
    excluded = 0
    for v in range(graph.n):
        comm = assignment[v]
        dist = {v: 0}
        frontier = [v]
        d = 0
        while frontier:
            d += 1
            nxt = []
            for u in frontier:
                for w in graph.adj[u]:
                    if assignment[w] == comm and w not in dist:
                        dist[w] = d
                        nxt.append(w)
            frontier = nxt
        if len(dist) < 2:
            records.append(FarnessRecord(v, comm, None, breakdowns[v].permanence))
            excluded += 1
            continue
        farness = sum(dist.values()) / (len(dist) - 1)
        records.append(FarnessRecord(v, comm, farness, breakdowns[v].permanence))
        groups.setdefault(farness, []).append(breakdowns[v].permanence)
    rows = tuple(
        FarnessRow(farness=f, count=len(ps), mean_permanence=sum(ps) / len(ps))
        for f, ps in sorted(groups.items())
    )
    return FarnessProfile(records=tuple(records), rows=rows, excluded=excluded)


def _pearson(xs: list[float], ys: list[float]) -> float | None:
    n = len(xs)
    mx = sum(xs) / n
    my = sum(ys) / n
    vx = sum((x - mx) ** 2 for x in xs)
    vy = sum((y - my) ** 2 for y in ys)
    if vx == 0.0 or vy == 0.0:
        return None
    cov = sum((x - mx) * (y - my) for x, y in zip(xs, ys))
    return cov / (vx * vy) ** 0.5


@dataclass(frozen=True)
class AssortativityReport:
    """Mean within-community assortativity of two vertex attributes.

    For each community, correlates attribute values across the endpoints
    of its internal edges (both orientations). Communities with no internal
    edge or a constant attribute are skipped per attribute.
    """

    communities: int
    permanence_r: float | None
    permanence_skipped: int
    degree_r: float | None
    degree_skipped: int


def permanence_assortativity(graph: Graph, partition: Partition) -> AssortativityReport:
    check_partition(graph, partition)
    breakdowns = permanence_breakdowns(graph, partition)
    perm_attr = [permanence_bin(b.permanence) + 1 for b in breakdowns]
    deg_attr = list(graph.degrees)
    assignment = partition.assignment
    internal_edges: dict[int, list[tuple[int, int]]] = {}
    for u, v in graph.edges:
        if assignment[u] == assignment[v]:
            internal_edges.setdefault(assignment[u], []).append((u, v))
    results = {}
    for name, attr in (("permanence", perm_attr), ("degree", deg_attr)):
        rs = []
        skipped = 0
        for cid in range(partition.n_communities):
            pairs = internal_edges.get(cid)
            if not pairs:
                skipped += 1
                continue
            xs = []
            ys = []
            for u, v in pairs:
                xs.extend((attr[u], attr[v]))
                ys.extend((attr[v], attr[u]))
            r = _pearson(xs, ys)
            if r is None:
                skipped += 1
                continue
            rs.append(r)
        results[name] = (sum(rs) / len(rs) if rs else None, skipped)
    return AssortativityReport(
        communities=partition.n_communities,
        permanence_r=results["permanence"][0],
        permanence_skipped=results["permanence"][1],
        degree_r=results["degree"][0],
        degree_skipped=results["degree"][1],
    )


OVERLAP_EDGES = (0.9, 0.8, 0.7, 0.6, 0.5, 0.4, 0.3, 0.2, 0.1)


def _overlap_bucket(weight: float) -> int:
    for i, lo in enumerate(OVERLAP_EDGES):
        if weight >= lo:
            return i
    return 9


@dataclass(frozen=True)
class OverlapReport:
    """Histogram of detected-vs-truth overlap weights.

    One entry per (detected, truth) pair with a non-empty intersection,
    weighted by |intersection| / |detected|. Bucket 1 holds [0.9, 1],
    bucket 10 holds [0, 0.1).
    """

    bucket_counts: tuple[int, ...]
    edges: int

    def bucket_fractions(self) -> tuple[float, ...]:
        if self.edges == 0:
            return tuple(0.0 for _ in self.bucket_counts)
        return tuple(c / self.edges for c in self.bucket_counts)


def bipartite_overlap(detected: Partition, truth: Partition) -> OverlapReport:
    if detected.n != truth.n:
        raise ValueError("partitions cover different vertex counts")
    counts = [0] * 10
    edges = 0
    for cid in range(detected.n_communities):
        members = detected.members(cid)
        size = len(members)
        inter: dict[int, int] = {}
        for v in members:
            t = truth.assignment[v]
            inter[t] = inter.get(t, 0) + 1
        for _t, k in sorted(inter.items()):
            counts[_overlap_bucket(k / size)] += 1
            edges += 1
    return OverlapReport(bucket_counts=tuple(counts), edges=edges)


@dataclass(frozen=True)
class SizeDiagnostics:
    detected_sizes: tuple[int, ...]
    truth_sizes: tuple[int, ...]
    largest_detected: int
    best_truth: int
    best_jaccard: float


def size_diagnostics(detected: Partition, truth: Partition) -> SizeDiagnostics:
    """Community size distributions plus the largest community's best match.

    The largest detected community (ties to the lowest id) is compared with
    every truth community by Jaccard index; the best match is reported.
    """
    if detected.n != truth.n:
        raise ValueError("partitions cover different vertex counts")
    largest = max(range(detected.n_communities), key=lambda c: (detected.sizes[c], -c))
    big = set(detected.members(largest))
    best_j = -1.0
    best_t = -1
    for t in range(truth.n_communities):
        other = set(truth.members(t))
        j = len(big & other) / len(big | other)
        if j > best_j:
            best_j = j
            best_t = t
    return SizeDiagnostics(
        detected_sizes=tuple(sorted(detected.sizes, reverse=True)),
        truth_sizes=tuple(sorted(truth.sizes, reverse=True)),
        largest_detected=largest,
        best_truth=best_t,
        best_jaccard=best_j,
    )


SPREAD_SELECTORS = ("random", "degree", "permanence")


@dataclass(frozen=True)
class SpreadingResult:
    selector: str
    runs: int
    rounds: tuple[int, ...]
    mean_rounds: float
    mean_unreached: float


def spreading_simulation(
    graph: Graph,
    truth: Partition,
    selector: str,
    runs: int,
    rng_seed: int,
) -> SpreadingResult:
    """Rounds needed to inform every reachable vertex from one seed per community.

    Every round, each informed vertex passes the message to one uniformly
    random neighbour that was uninformed at the round's start; simultaneous
    deliveries merge. Seeds are the per-community pick of `selector`:
    a uniformly random member, the highest-degree member, or the
    highest-permanence member (ties to the lowest id).
    """
    if selector not in SPREAD_SELECTORS:
        raise ValueError(f"unknown initiator selector: {selector!r}")
    if runs < 1:
        raise ValueError("runs must be at least 1")
    check_partition(graph, truth)
    fixed_initiators = None
    if selector == "degree":
        fixed_initiators = [
            min(truth.members(c), key=lambda v: (-graph.degrees[v], v))
            for c in range(truth.n_communities)
        ]
    elif selector == "permanence":
        downs = permanence_breakdowns(graph, truth)
        fixed_initiators = [
            min(truth.members(c), key=lambda v: (-downs[v].permanence, v))
            for c in range(truth.n_communities)
        ]
    rounds_out = []
    unreached_total = 0
    for run in range(runs):
        rng = derive_rng(rng_seed, "spreading", selector, run)
        if fixed_initiators is None:
            initiators = [
                truth.members(c)[rng.integers(truth.sizes[c])]
                for c in range(truth.n_communities)
            ]
        else:
            initiators = fixed_initiators
        informed = set(initiators)
        reach = set(initiators)
        frontier = list(informed)
        while frontier:
            nxt = []
            for u in frontier:
                for w in graph.adj[u]:
                    if w not in reach:
                        reach.add(w)
                        nxt.append(w)
            frontier = nxt
        unreached_total += graph.n - len(reach)
        rounds = 0
        while len(informed) < len(reach):
            newly = set()
            for u in sorted(informed):
                cands = [w for w in graph.adj[u] if w not in informed]
                if cands:
                    newly.add(cands[rng.integers(len(cands))])
            informed |= newly
            rounds += 1
        rounds_out.append(rounds)
    return SpreadingResult(
        selector=selector,
        runs=runs,
        rounds=tuple(rounds_out),
        mean_rounds=sum(rounds_out) / runs,
        mean_unreached=unreached_total / runs,
    )


@dataclass(frozen=True)
class GrowthRow:
    blocks: int
    n: int
    m: int
    modularity: float
    permanence: float


def asymptotic_growth_study(
    block_counts,
    block_size: int,
    p_in: float,
    p_out: float,
    rng_seed: int,
) -> tuple[GrowthRow, ...]:
    """Score planted ground truth while the number of blocks grows.

    Modularity of the planted partition rises with the block count even
    though the per-block structure is unchanged; permanence stays put.
    """
    rows = []
    for blocks in block_counts:
        graph, truth = planted_partition(
            blocks, block_size, p_in, p_out, derive_seed(rng_seed, "growth", blocks)
        )
        rows.append(
            GrowthRow(
                blocks=blocks,
                n=graph.n,
                m=graph.m,
                modularity=modularity(graph, truth),
                permanence=graph_permanence(graph, truth),
            )
        )
    return tuple(rows)
