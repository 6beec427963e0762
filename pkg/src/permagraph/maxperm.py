"""Greedy permanence-maximizing community detection.

The detector seeds an initial partition, then sweeps vertices in order.
For each vertex it tries the communities of its neighbours (ascending id)
and commits a move only if the move strictly raises both the vertex's own
permanence and the summed permanence of its neighbours. Sweeps repeat until
the per-sweep permanence sum stops changing or an iteration cap is hit.

Two evaluation back ends produce bit-identical runs: a from-scratch scorer
and an incrementally maintained per-vertex community edge cache.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .graphs import Graph, Partition, clustering_coefficient
from .rng import permutation
from .scoring import (
    _internal_links,
    combine_permanence,
    graph_permanence,
    internal_cc_value,
    permanence_value,
)

SEED_STRATEGIES = ("pair_wise", "high_degree", "high_cc")
MOVE_RULES = ("both", "vertex-only")
SCAN_MODES = ("first-improvement", "keep-scanning")


@dataclass(frozen=True)
class DetectorConfig:
    """Knobs for `detect`.

    move_rule "both" demands a strict gain for the vertex and for its
    neighbourhood sum; "vertex-only" drops the neighbourhood condition.
    scan "first-improvement" stops at the first committed move per vertex;
    "keep-scanning" keeps trying later candidates against the original
    neighbourhood sum.
    """

    seed_strategy: str = "high_degree"
    max_iterations: int = 10
    rng_seed: int = 0
    vertex_order: tuple[int, ...] | None = None
    move_rule: str = "both"
    scan: str = "first-improvement"

    def __post_init__(self) -> None:
        if self.seed_strategy not in SEED_STRATEGIES:
            raise ValueError(f"unknown seed strategy: {self.seed_strategy!r}")
        if self.move_rule not in MOVE_RULES:
            raise ValueError(f"unknown move rule: {self.move_rule!r}")
        if self.scan not in SCAN_MODES:
            raise ValueError(f"unknown scan mode: {self.scan!r}")
        if self.max_iterations < 1:
            raise ValueError("max_iterations must be at least 1")


@dataclass(frozen=True)
class DetectResult:
    partition: Partition
    permanence: float
    iterations: int
    converged: bool
    sweep_sums: tuple[float, ...]


def _effective_order(graph: Graph, vertex_order) -> list[int]:
    if vertex_order is None:
        return list(range(graph.n))
    order = list(vertex_order)
    if sorted(order) != list(range(graph.n)):
        raise ValueError("vertex_order must be a permutation of all vertex ids")
    return order


def seed_communities(graph: Graph, strategy: str, vertex_order=None) -> Partition:
    """Build the initial partition for the detector.

    pair_wise    greedy matching: each vertex pairs with its earliest
                 still-unmatched neighbour; leftovers become singletons.
    high_degree  vertices claim their unassigned neighbours, highest
                 degree first.
    high_cc      same sweep keyed by clustering coefficient instead.

    Ties (and the pairing scan) follow `vertex_order`, ascending id when
    no order is given.
    """
    order = _effective_order(graph, vertex_order)
    pos = [0] * graph.n
    for i, v in enumerate(order):
        pos[v] = i
    assigned = [-1] * graph.n
    next_cid = 0
    if strategy == "pair_wise":
        for v in order:
            if assigned[v] >= 0:
                continue
            partner = -1
            best = graph.n
            for u in graph.adj[v]:
                if assigned[u] < 0 and pos[u] < best:
                    best = pos[u]
                    partner = u
            assigned[v] = next_cid
            if partner >= 0:
                assigned[partner] = next_cid
            next_cid += 1
    elif strategy in ("high_degree", "high_cc"):
        if strategy == "high_degree":
            keys = [(-graph.degrees[v], pos[v]) for v in range(graph.n)]
        else:
            keys = [(-clustering_coefficient(graph, v), pos[v]) for v in range(graph.n)]
        for v in sorted(range(graph.n), key=keys.__getitem__):
            if assigned[v] >= 0:
                continue
            assigned[v] = next_cid
            for u in graph.adj[v]:
                if assigned[u] < 0:
                    assigned[u] = next_cid
            next_cid += 1
    else:
        raise ValueError(f"unknown seed strategy: {strategy!r}")
    return Partition(assigned)


class _FreshState:
    """From-scratch permanence evaluation over a mutable assignment."""

    __slots__ = ("graph", "assignment", "sizes")

    def __init__(self, graph: Graph, assignment) -> None:
        self.graph = graph
        self.assignment = list(assignment)
        self.sizes: dict[int, int] = {}
        for c in self.assignment:
            self.sizes[c] = self.sizes.get(c, 0) + 1

    def perm(self, v: int) -> float:
        a = self.assignment
        return permanence_value(self.graph, a, v, self.sizes[a[v]])

    def move(self, v: int, new_comm: int) -> None:
        old = self.assignment[v]
        if new_comm == old:
            return
        k = self.sizes[old] - 1
        if k:
            self.sizes[old] = k
        else:
            del self.sizes[old]
        self.sizes[new_comm] = self.sizes.get(new_comm, 0) + 1
        self.assignment[v] = new_comm

    def audit(self) -> None:  # pragma: no cover - nothing cached to audit
        pass


class CommunityEdgeCache:
    """Per-vertex community edge counts, maintained across moves.

    For every vertex u the cache holds `counts[u]` (community id -> number
    of u's neighbours in that community) and `links[u]` (edges among u's
    internal neighbours, the numerator of c_in). `move` updates both in
    place and `audit` cross-checks the whole cache against a recount.
    """

    __slots__ = ("graph", "assignment", "sizes", "counts", "links")

    def __init__(self, graph: Graph, assignment) -> None:
        self.graph = graph
        self.assignment = list(assignment)
        self.sizes: dict[int, int] = {}
        for c in self.assignment:
            self.sizes[c] = self.sizes.get(c, 0) + 1
        self.counts: list[dict[int, int]] = []
        self.links: list[int] = []
        for v in range(graph.n):
            cnt, lnk = self._recount(v)
            self.counts.append(cnt)
            self.links.append(lnk)

    def _recount(self, v: int) -> tuple[dict[int, int], int]:
        a = self.assignment
        cnt: dict[int, int] = {}
        internal = []
        comm = a[v]
        for u in self.graph.adj[v]:
            cu = a[u]
            cnt[cu] = cnt.get(cu, 0) + 1
            if cu == comm:
                internal.append(u)
        return cnt, _internal_links(self.graph, internal)

    def perm(self, v: int) -> float:
        comm = self.assignment[v]
        cnt = self.counts[v]
        internal_degree = cnt.get(comm, 0)
        emax = 0
        for c, k in cnt.items():
            if c != comm and k > emax:
                emax = k
        c_in = internal_cc_value(internal_degree, self.links[v])
        singleton = self.sizes[comm] == 1
        return combine_permanence(
            internal_degree, self.graph.degrees[v], emax, c_in, singleton
        )

    def move(self, v: int, new_comm: int) -> None:
        old = self.assignment[v]
        if new_comm == old:
            return
        a = self.assignment
        adj_sets = self.graph.adj_sets
        vset = adj_sets[v]
        for u in self.graph.adj[v]:
            cnt = self.counts[u]
            k = cnt[old] - 1
            if k:
                cnt[old] = k
            else:
                del cnt[old]
            cnt[new_comm] = cnt.get(new_comm, 0) + 1
            cu = a[u]
            if cu == old or cu == new_comm:
                uset = adj_sets[u]
                small, big = (uset, vset) if len(uset) <= len(vset) else (vset, uset)
                shared = 0
                for x in small:
                    if x in big and a[x] == cu:
                        shared += 1
                if cu == old:
                    self.links[u] -= shared
                else:
                    self.links[u] += shared
        a[v] = new_comm
        k = self.sizes[old] - 1
        if k:
            self.sizes[old] = k
        else:
            del self.sizes[old]
        self.sizes[new_comm] = self.sizes.get(new_comm, 0) + 1
        internal = [u for u in self.graph.adj[v] if a[u] == new_comm]
        self.links[v] = _internal_links(self.graph, internal)

    def audit(self) -> None:
        """Recount every vertex from scratch and compare with the cache."""
        sizes: dict[int, int] = {}
        for c in self.assignment:
            sizes[c] = sizes.get(c, 0) + 1
        if sizes != self.sizes:
            raise RuntimeError("cache audit failed: community sizes drifted")
        for v in range(self.graph.n):
            cnt, lnk = self._recount(v)
            if cnt != self.counts[v]:
                raise RuntimeError(
                    f"cache audit failed: edge counts for vertex {v} drifted"
                )
            if lnk != self.links[v]:
                raise RuntimeError(
                    f"cache audit failed: internal link count for vertex {v} drifted"
                )


def _run(graph: Graph, config: DetectorConfig, state, audit: bool) -> DetectResult:
    order = _effective_order(graph, config.vertex_order)
    need_neig = config.move_rule == "both"
    first_improvement = config.scan == "first-improvement"
    adj_of = graph.adj
    old_sum = None
    sums: list[float] = []
    converged = False
    for _ in range(config.max_iterations):
        sweep_sum = 0.0
        for v in order:
            cur_p = state.perm(v)
            if cur_p == 1.0:
                sweep_sum += cur_p
                continue
            adj = adj_of[v]
            home = state.assignment[v]
            candidates = sorted({state.assignment[u] for u in adj} - {home})
            if not candidates:
                sweep_sum += cur_p
                continue
            if need_neig:
                cur_neig = 0.0
                for u in adj:
                    cur_neig += state.perm(u)
            for cand in candidates:
                state.move(v, cand)
                n_p = state.perm(v)
                better = n_p > cur_p
                if better and need_neig:
                    n_neig = 0.0
                    for u in adj:
                        n_neig += state.perm(u)
                    better = n_neig > cur_neig
                if better:
                    cur_p = n_p
                    home = cand
                    if audit:
                        state.audit()
                    if first_improvement:
                        break
                else:
                    state.move(v, home)
            sweep_sum += cur_p
        sums.append(sweep_sum)
        if old_sum is not None and sweep_sum == old_sum:
            converged = True
            break
        old_sum = sweep_sum
    final = Partition(state.assignment)
    return DetectResult(
        partition=final,
        permanence=graph_permanence(graph, final),
        iterations=len(sums),
        converged=converged,
        sweep_sums=tuple(sums),
    )


def detect(graph: Graph, config: DetectorConfig | None = None) -> DetectResult:
    """Run the detector with from-scratch permanence evaluation."""
    config = config or DetectorConfig()
    seed = seed_communities(graph, config.seed_strategy, config.vertex_order)
    return _run(graph, config, _FreshState(graph, seed.assignment), audit=False)


def detect_with_cache(
    graph: Graph, config: DetectorConfig | None = None, audit: bool = False
) -> DetectResult:
    """Run the detector on the incremental cache back end.

    Produces bit-identical results to `detect`. With `audit=True` the whole
    cache is recounted after every committed move (slow; for tests).
    """
    config = config or DetectorConfig()
    seed = seed_communities(graph, config.seed_strategy, config.vertex_order)
    return _run(graph, config, CommunityEdgeCache(graph, seed.assignment), audit=audit)


@dataclass(frozen=True)
class SensitivityReport:
    """Stability of detection under random vertex orders.

    phi_values[k-1] is the number of constant groups after the first k
    runs, divided by the vertex count: vertices in one group were placed
    together in every one of those runs. normalized_phi rescales by the
    smallest value so the first entry reads 1.0.
    """

    permutation_count: int
    phi_values: tuple[float, ...]
    normalized_phi: tuple[float, ...]
    constant_communities: tuple[tuple[int, ...], ...]

    @property
    def n_constant(self) -> int:
        return len(self.constant_communities)


def sensitivity(
    graph: Graph,
    config: DetectorConfig | None = None,
    permutations: int = 20,
) -> SensitivityReport:
    """Run the detector under seeded random vertex orders and track agreement.

    Orders are derived from config.rng_seed, one stream per run.
    """
    if permutations < 2:
        raise ValueError("permutations must be at least 2")
    config = config or DetectorConfig()
    n = graph.n
    group = [0] * n
    phi: list[float] = []
    for i in range(permutations):
        order = permutation(config.rng_seed, n, "sensitivity", i)
        cfg = replace(config, vertex_order=tuple(order))
        result = detect_with_cache(graph, cfg)
        a = result.partition.assignment
        mapping: dict[tuple[int, int], int] = {}
        new_group = [0] * n
        for v in range(n):
            key = (group[v], a[v])
            if key not in mapping:
                mapping[key] = len(mapping)
            new_group[v] = mapping[key]
        group = new_group
        phi.append(len(mapping) / n)
    groups: dict[int, list[int]] = {}
    for v in range(n):
        groups.setdefault(group[v], []).append(v)
    constant = tuple(
        tuple(sorted(members))
        for members in sorted(groups.values(), key=lambda ms: min(ms))
    )
    low = min(phi)
    return SensitivityReport(
        permutation_count=permutations,
        phi_values=tuple(phi),
        normalized_phi=tuple(p / low for p in phi),
        constant_communities=constant,
    )
