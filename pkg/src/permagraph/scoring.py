"""Vertex permanence and classic partition quality scores.

Permanence of a vertex v in its community:

    perm(v) = [I(v) / E_max(v)] * [1 / D(v)] - [1 - c_in(v)]

where I(v) is the number of neighbours sharing v's community, E_max(v) the
maximum number of edges from v into any single other community, D(v) the
degree, and c_in(v) the fraction of pairs of v's internal neighbours that
are themselves connected. Boundary rules, applied in this order:

  1. v alone in its community          -> perm(v) = 0
  2. v has no external connections     -> perm(v) = c_in(v)
  3. I(v) < 2                          -> c_in(v) = 0

A vertex with I(v) = 0 that still has external edges would score exactly -1;
to keep the open range (-1, 1] such vertices are reported as -1 + 2**-52
with `clamped` set.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph, Partition, check_partition

CLAMP_EPS = 2.0 ** -52


@dataclass(frozen=True)
class PermanenceBreakdown:
    """Permanence of one vertex together with every factor that built it."""

    vertex: int
    degree: int
    internal_degree: int
    max_external: int
    internal_cc: float
    permanence: float
    singleton: bool
    isolated: bool
    clamped: bool


def _internal_links(graph: Graph, internal: list[int]) -> int:
    """Number of edges among `internal` (v's in-community neighbours)."""
    iset = set(internal)
    total = 0
    for u in internal:
        total += len(graph.adj_sets[u] & iset)
    return total // 2


def combine_permanence(
    internal_degree: int,
    degree: int,
    max_external: int,
    internal_cc: float,
    singleton: bool,
) -> float:
    """Assemble a permanence value from its counted parts.

    Shared by the from-scratch and the cache-backed evaluation paths so the
    two produce bit-identical floats.
    """
    if singleton:
        return 0.0
    if degree == 0:
        return 0.0
    if max_external == 0:
        return internal_cc
    if internal_degree == 0:
        return -1.0 + CLAMP_EPS
    return (internal_degree / max_external) * (1.0 / degree) - (1.0 - internal_cc)


def internal_cc_value(internal_degree: int, internal_links: int) -> float:
    """c_in from the internal-neighbour count and the links among them."""
    if internal_degree < 2:
        return 0.0
    return internal_links / (internal_degree * (internal_degree - 1) / 2)


def permanence_value(graph, assignment, v: int, community_size: int) -> float:
    """Fast-path permanence of v under a raw assignment sequence.

    `community_size` is the size of v's community (the caller tracks it).
    """
    if community_size == 1:
        return 0.0
    comm = assignment[v]
    adj = graph.adj[v]
    degree = len(adj)
    if degree == 0:
        return 0.0
    internal = []
    ext: dict[int, int] = {}
    for u in adj:
        cu = assignment[u]
        if cu == comm:
            internal.append(u)
        else:
            ext[cu] = ext.get(cu, 0) + 1
    c_in = internal_cc_value(len(internal), _internal_links(graph, internal))
    emax = max(ext.values()) if ext else 0
    return combine_permanence(len(internal), degree, emax, c_in, False)


def vertex_permanence(graph: Graph, partition: Partition, v: int) -> PermanenceBreakdown:
    """Permanence of one vertex with the full factor breakdown."""
    check_partition(graph, partition)
    assignment = partition.assignment
    comm = assignment[v]
    adj = graph.adj[v]
    degree = len(adj)
    singleton = partition.sizes[comm] == 1
    internal = [u for u in adj if assignment[u] == comm]
    ext: dict[int, int] = {}
    for u in adj:
        cu = assignment[u]
        if cu != comm:
            ext[cu] = ext.get(cu, 0) + 1
    internal_degree = len(internal)
    c_in = internal_cc_value(internal_degree, _internal_links(graph, internal))
    emax = max(ext.values()) if ext else 0
    value = combine_permanence(internal_degree, degree, emax, c_in, singleton)
    clamped = (not singleton) and degree > 0 and emax > 0 and internal_degree == 0
    return PermanenceBreakdown(
        vertex=v,
        degree=degree,
        internal_degree=internal_degree,
        max_external=emax,
        internal_cc=c_in,
        permanence=value,
        singleton=singleton,
        isolated=degree == 0,
        clamped=clamped,
    )


def permanence_breakdowns(graph: Graph, partition: Partition) -> list[PermanenceBreakdown]:
    """Breakdowns for every vertex."""
    check_partition(graph, partition)
    return [vertex_permanence(graph, partition, v) for v in range(graph.n)]


def graph_permanence(graph: Graph, partition: Partition) -> float:
    """Mean vertex permanence over the whole graph."""
    if graph.n == 0:
        raise ValueError("permanence undefined for an empty graph")
    check_partition(graph, partition)
    sizes = partition.sizes
    assignment = partition.assignment
    total = 0.0
    for v in range(graph.n):
        total += permanence_value(graph, assignment, v, sizes[assignment[v]])
    return total / graph.n


def modularity(graph: Graph, partition: Partition) -> float:
    """Newman modularity of the partition (diagonal terms included)."""
    if graph.m == 0:
        raise ValueError("modularity undefined for a graph without edges")
    check_partition(graph, partition)
    m = graph.m
    assignment = partition.assignment
    intra = [0] * partition.n_communities
    for u, v in graph.edges:
        if assignment[u] == assignment[v]:
            intra[assignment[u]] += 1
    vol = [0] * partition.n_communities
    for v in range(graph.n):
        vol[assignment[v]] += graph.degrees[v]
    q = 0.0
    for c in range(partition.n_communities):
        q += intra[c] / m - (vol[c] / (2.0 * m)) ** 2
    return q


def boundary_edges(graph: Graph, partition: Partition, cid: int) -> int:
    """Number of edges with exactly one endpoint in community `cid`."""
    assignment = partition.assignment
    count = 0
    for v in partition.members(cid):
        for u in graph.adj[v]:
            if assignment[u] != cid:
                count += 1
    return count


def community_volume(graph: Graph, partition: Partition, cid: int) -> int:
    """Sum of degrees over the community's members."""
    return sum(graph.degrees[v] for v in partition.members(cid))


def conductance(graph: Graph, partition: Partition, cid: int) -> float:
    """Conductance of one community; degenerate volumes score 0.0."""
    check_partition(graph, partition)
    cut = boundary_edges(graph, partition, cid)
    vol = community_volume(graph, partition, cid)
    denom = min(vol, 2 * graph.m - vol)
    if denom == 0:
        return 0.0
    return cut / denom


def cut_ratio(graph: Graph, partition: Partition, cid: int) -> float:
    """Cut ratio of one community; degenerate sizes score 0.0."""
    check_partition(graph, partition)
    size = partition.sizes[cid]
    if size == 0 or size == graph.n:
        return 0.0
    cut = boundary_edges(graph, partition, cid)
    return cut / (size * (graph.n - size))


@dataclass(frozen=True)
class ScoreReport:
    """All four partition scores plus degeneracy bookkeeping.

    `conductance_complement` / `cut_ratio_complement` are means over
    communities of (1 - score); unweighted by default, weighted by
    community size when `size_weighted` is set.
    """

    modularity: float
    conductance_complement: float
    cut_ratio_complement: float
    permanence: float
    size_weighted: bool
    clamped_vertices: int
    degenerate_conductance: int
    degenerate_cut_ratio: int


def score_report(
    graph: Graph,
    partition: Partition,
    size_weighted: bool = False,
) -> ScoreReport:
    """Score a partition with modularity, conductance/cut complements, permanence."""
    check_partition(graph, partition)
    q = modularity(graph, partition)
    k = partition.n_communities
    cond_terms = []
    cut_terms = []
    degen_cond = 0
    degen_cut = 0
    for cid in range(k):
        vol = community_volume(graph, partition, cid)
        if min(vol, 2 * graph.m - vol) == 0:
            degen_cond += 1
        size = partition.sizes[cid]
        if size == 0 or size == graph.n:
            degen_cut += 1
        cond_terms.append(1.0 - conductance(graph, partition, cid))
        cut_terms.append(1.0 - cut_ratio(graph, partition, cid))
    if size_weighted:
        weights = [partition.sizes[cid] / graph.n for cid in range(k)]
    else:
        weights = [1.0 / k] * k
    cond_mean = sum(w * t for w, t in zip(weights, cond_terms))
    cut_mean = sum(w * t for w, t in zip(weights, cut_terms))
    breakdowns = permanence_breakdowns(graph, partition)
    perm = sum(b.permanence for b in breakdowns) / graph.n
    clamped = sum(1 for b in breakdowns if b.clamped)
    return ScoreReport(
        modularity=q,
        conductance_complement=cond_mean,
        cut_ratio_complement=cut_mean,
        permanence=perm,
        size_weighted=size_weighted,
        clamped_vertices=clamped,
        degenerate_conductance=degen_cond,
        degenerate_cut_ratio=degen_cut,
    )
