"""Core graph and partition types, text formats, and synthetic generators.

Graphs are simple undirected graphs on vertices 0..n-1. Both `Graph` and
`Partition` are immutable after construction, so they can be shared freely
across threads; algorithms that need to mutate membership keep their own
working arrays and emit a fresh `Partition` at the end.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GraphFormatError, PartitionError
from .rng import derive_rng


class Graph:
    """Immutable simple undirected graph.

    Vertices are 0..n-1. `labels` are the external names used by the text
    formats; they default to the decimal vertex ids.
    """

    __slots__ = ("n", "edges", "adj", "adj_sets", "degrees", "labels", "_label_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        if n < 0:
            raise GraphFormatError("vertex count must be non-negative")
        norm: set[tuple[int, int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphFormatError(f"self-loop on vertex {u} is not allowed")
            norm.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges: tuple[tuple[int, int], ...] = tuple(sorted(norm))
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self.adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.adj_sets: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in self.adj)
        self.degrees: tuple[int, ...] = tuple(len(a) for a in self.adj)
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise GraphFormatError("label count does not match vertex count")
        self.labels = tuple(str(x) for x in labels)
        if len(set(self.labels)) != n:
            raise GraphFormatError("vertex labels must be unique")
        self._label_index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.degrees[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]

    def vertex_id(self, label: str) -> int:
        try:
            return self._label_index[label]
        except KeyError:
            raise GraphFormatError(f"unknown vertex label {label!r}") from None

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self.n}, m={self.m})"


def edges_among(graph: Graph, vertices: Iterable[int]) -> int:
    """Count edges of `graph` with both endpoints in `vertices`."""
    vs = set(vertices)
    total = 0
    for u in vs:
        total += len(graph.adj_sets[u] & vs)
    return total // 2


def clustering_coefficient(graph: Graph, v: int) -> float:
    """Whole-graph local clustering coefficient of v (0.0 when degree < 2)."""
    d = graph.degrees[v]
    if d < 2:
        return 0.0
    return edges_among(graph, graph.adj[v]) / (d * (d - 1) / 2)


class Partition:
    """Immutable assignment of every vertex to exactly one community.

    Community ids are canonicalized to 0..k-1 in order of first appearance
    by vertex id, so structurally equal partitions compare equal regardless
    of the input labelling.
    """

    __slots__ = ("assignment", "communities", "sizes")

    def __init__(self, assignment: Sequence[int]):
        remap: dict[int, int] = {}
        canon: list[int] = []
        for raw in assignment:
            c = int(raw)
            if c < 0:
                raise PartitionError("community ids must be non-negative")
            if c not in remap:
                remap[c] = len(remap)
            canon.append(remap[c])
        self.assignment: tuple[int, ...] = tuple(canon)
        groups: list[list[int]] = [[] for _ in range(len(remap))]
        for v, c in enumerate(self.assignment):
            groups[c].append(v)
        self.communities: tuple[tuple[int, ...], ...] = tuple(tuple(g) for g in groups)
        self.sizes: tuple[int, ...] = tuple(len(g) for g in groups)

    @classmethod
    def from_communities(cls, n: int, groups: Iterable[Iterable[int]]) -> "Partition":
        assignment = [-1] * n
        for cid, group in enumerate(groups):
            for v in group:
                if not (0 <= v < n):
                    raise PartitionError(f"vertex {v} out of range for n={n}")
                if assignment[v] != -1:
                    raise PartitionError(f"vertex {v} assigned to two communities")
                assignment[v] = cid
        missing = [v for v, c in enumerate(assignment) if c == -1]
        if missing:
            raise PartitionError(f"vertices without a community: {missing[:10]}")
        return cls(assignment)

    @property
    def n(self) -> int:
        return len(self.assignment)

    @property
    def n_communities(self) -> int:
        return len(self.communities)

    def community_of(self, v: int) -> int:
        return self.assignment[v]

    def members(self, cid: int) -> tuple[int, ...]:
        return self.communities[cid]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.assignment == other.assignment

    def __hash__(self) -> int:
        return hash(self.assignment)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Partition(n={self.n}, communities={self.n_communities})"


def check_partition(graph: Graph, partition: Partition) -> None:
    """Raise if `partition` does not cover exactly the vertices of `graph`."""
    if partition.n != graph.n:
        raise PartitionError(
            f"partition covers {partition.n} vertices, graph has {graph.n}"
        )


# ---------------------------------------------------------------------------
# Text formats
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeListReport:
    """Result of parsing an edge list: the graph plus what was dropped."""

    graph: Graph
    self_loops_dropped: int
    duplicates_dropped: int


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def load_edge_list(text: str) -> EdgeListReport:
    """Parse edge-list text: one edge per line, two whitespace-separated labels.

    `#` starts a comment. Vertex ids are assigned in order of first
    appearance. Self-loops and duplicate edges are dropped and counted.
    Input with no edges at all is an error.
    """
    labels: list[str] = []
    index: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    self_loops = 0
    duplicates = 0

    def vid(label: str) -> int:
        if label not in index:
            index[label] = len(labels)
            labels.append(label)
        return index[label]

    seen_any = False
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(
                f"line {lineno}: expected two vertex labels, got {len(parts)} fields"
            )
        seen_any = True
        u, v = vid(parts[0]), vid(parts[1])
        if u == v:
            self_loops += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in edges:
            duplicates += 1
        else:
            edges.add(key)
    if not seen_any:
        raise GraphFormatError("edge list contains no edges")
    graph = Graph(len(labels), edges, labels)
    return EdgeListReport(graph, self_loops, duplicates)


def dump_edge_list(graph: Graph) -> str:
    """Serialize a graph back to edge-list text (one line per edge)."""
    for lab in graph.labels:
        if not lab or any(ch.isspace() for ch in lab) or "#" in lab:
            raise GraphFormatError(f"label {lab!r} cannot be written to edge-list text")
    lines = [f"{graph.labels[u]} {graph.labels[v]}" for u, v in graph.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def load_partition(text: str, graph: Graph) -> Partition:
    """Parse partition text: one `vertex_label<TAB>community_label` per line.

    Labels must match the graph; every vertex must appear exactly once.
    Community ids are assigned in order of first appearance.
    """
    assignment: list[int] = [-1] * graph.n
    comm_index: dict[str, int] = {}
    for lineno, line in _content_lines(text):
        parts = line.split()
        if len(parts) != 2:
            raise PartitionError(
                f"line {lineno}: expected vertex and community labels, got {len(parts)} fields"
            )
        vlab, clab = parts
        try:
            v = graph.vertex_id(vlab)
        except GraphFormatError:
            raise PartitionError(f"line {lineno}: unknown vertex label {vlab!r}") from None
        if assignment[v] != -1:
            raise PartitionError(f"line {lineno}: vertex {vlab!r} assigned twice")
        if clab not in comm_index:
            comm_index[clab] = len(comm_index)
        assignment[v] = comm_index[clab]
    missing = [graph.labels[v] for v, c in enumerate(assignment) if c == -1]
    if missing:
        shown = ", ".join(missing[:10]) + (", ..." if len(missing) > 10 else "")
        raise PartitionError(f"{len(missing)} vertices missing from partition: {shown}")
    return Partition(assignment)


def dump_partition(graph: Graph, partition: Partition) -> str:
    """Serialize a partition as `vertex_label<TAB>community_id` lines."""
    check_partition(graph, partition)
    lines = [
        f"{graph.labels[v]}\t{partition.assignment[v]}" for v in range(graph.n)
    ]
    return "\n".join(lines) + ("\n" if lines else "")


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def ring_of_cliques(cliques: int, clique_size: int) -> tuple[Graph, Partition]:
    """A ring of `cliques` k-cliques joined by single bridge edges.

    Vertex 0 of clique i carries the outgoing bridge to vertex 1 of clique
    (i+1) mod m, so no vertex has more than one external edge. The returned
    partition is the cliques themselves.
    """
    if cliques < 3:
        raise GraphFormatError("ring_of_cliques needs at least 3 cliques")
    if clique_size < 3:
        raise GraphFormatError("ring_of_cliques needs clique_size >= 3")
    m, k = cliques, clique_size
    edges: list[tuple[int, int]] = []
    for i in range(m):
        base = i * k
        for a in range(k):
            for b in range(a + 1, k):
                edges.append((base + a, base + b))
        edges.append((base, ((i + 1) % m) * k + 1))
    graph = Graph(m * k, edges)
    partition = Partition([v // k for v in range(m * k)])
    return graph, partition


def grid(rows: int, cols: int) -> tuple[Graph, Partition]:
    """A rows x cols 4-neighbour lattice; the truth partition is singletons."""
    if rows < 2 or cols < 2:
        raise GraphFormatError("grid needs rows >= 2 and cols >= 2")
    edges: list[tuple[int, int]] = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    graph = Graph(rows * cols, edges)
    partition = Partition(list(range(rows * cols)))
    return graph, partition


def planted_partition(
    blocks: int,
    block_size: int,
    p_in: float,
    p_out: float,
    rng_seed: int,
) -> tuple[Graph, Partition]:
    """Planted-partition random graph with Bernoulli intra/inter edges."""
    if blocks < 1 or block_size < 1:
        raise GraphFormatError("planted_partition needs blocks >= 1 and block_size >= 1")
    if not (0.0 <= p_out < p_in <= 1.0):
        raise GraphFormatError("planted_partition needs 0 <= p_out < p_in <= 1")
    rng = derive_rng(rng_seed, "planted-partition", blocks, block_size)
    n = blocks * block_size
    edges: list[tuple[int, int]] = []
    for bi in range(blocks):
        oi = bi * block_size
        # intra-block pairs
        for a in range(block_size):
            draws = rng.random(block_size - a - 1)
            for off, hit in enumerate(draws < p_in):
                if hit:
                    edges.append((oi + a, oi + a + 1 + off))
        # inter-block pairs against later blocks
        for bj in range(bi + 1, blocks):
            oj = bj * block_size
            draws = rng.random((block_size, block_size))
            for a in range(block_size):
                for b in range(block_size):
                    if draws[a, b] < p_out:
                        edges.append((oi + a, oj + b))
    graph = Graph(n, edges)
    partition = Partition([v // block_size for v in range(n)])
    return graph, partition
