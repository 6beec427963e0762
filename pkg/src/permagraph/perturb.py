"""Partition perturbation: controlled noise for robustness studies.

Each strategy swaps community memberships between vertex pairs, so the
multiset of community sizes never changes. The amount of noise is a
fraction p; seeds make every run reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graphs import Graph, Partition, check_partition
from .rng import derive_rng, derive_seed
from .scoring import (
    conductance,
    cut_ratio,
    modularity,
    permanence_breakdowns,
)

PERTURB_STRATEGIES = ("edge_based", "random", "community_based")


@dataclass(frozen=True)
class PerturbResult:
    partition: Partition
    strategy: str
    p: float
    requested_swaps: int
    performed_swaps: int
    exhausted: bool
    skipped_communities: tuple[int, ...] = ()


def _edge_arrays(graph: Graph) -> tuple[np.ndarray, np.ndarray]:
    eu = np.fromiter((e[0] for e in graph.edges), dtype=np.int64, count=graph.m)
    ev = np.fromiter((e[1] for e in graph.edges), dtype=np.int64, count=graph.m)
    return eu, ev


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"perturbation fraction must lie in [0, 1], got {p}")


def perturb_edge_based(
    graph: Graph, partition: Partition, p: float, rng_seed: int
) -> PerturbResult:
    """Swap memberships across ceil(p*|E|) random boundary edges.

    Each step picks a uniformly random edge whose endpoints currently sit
    in different communities and exchanges their memberships. Stops early
    if no boundary edge is left.
    """
    _check_p(p)
    check_partition(graph, partition)
    rng = derive_rng(rng_seed, "edge_based")
    requested = math.ceil(p * graph.m)
    a = np.array(partition.assignment, dtype=np.int64)
    eu, ev = _edge_arrays(graph)
    performed = 0
    for _ in range(requested):
        idx = np.flatnonzero(a[eu] != a[ev])
        if idx.size == 0:
            break
        e = idx[rng.integers(idx.size)]
        u, w = eu[e], ev[e]
        a[u], a[w] = a[w], a[u]
        performed += 1
    return PerturbResult(
        partition=Partition(a.tolist()),
        strategy="edge_based",
        p=p,
        requested_swaps=requested,
        performed_swaps=performed,
        exhausted=performed < requested,
    )


def perturb_random(
    graph: Graph, partition: Partition, p: float, rng_seed: int
) -> PerturbResult:
    """Swap memberships of ceil(p*|V|) random cross-community vertex pairs.

    Picks u uniformly over all vertices and v uniformly over vertices in a
    different community. Needs at least two communities.
    """
    _check_p(p)
    check_partition(graph, partition)
    if partition.n_communities < 2:
        raise ValueError("random perturbation needs at least two communities")
    rng = derive_rng(rng_seed, "random")
    requested = math.ceil(p * graph.n)
    a = np.array(partition.assignment, dtype=np.int64)
    for _ in range(requested):
        u = int(rng.integers(graph.n))
        others = np.flatnonzero(a != a[u])
        v = others[rng.integers(others.size)]
        a[u], a[v] = a[v], a[u]
    return PerturbResult(
        partition=Partition(a.tolist()),
        strategy="random",
        p=p,
        requested_swaps=requested,
        performed_swaps=requested,
        exhausted=False,
    )


def perturb_community_based(
    graph: Graph, partition: Partition, p: float, rng_seed: int
) -> PerturbResult:
    """Per community, swap memberships across ceil(p*|S|) of its boundary edges.

    Communities are processed in ascending id. A community with no boundary
    edge left is skipped and reported.
    """
    _check_p(p)
    check_partition(graph, partition)
    rng = derive_rng(rng_seed, "community_based")
    a = np.array(partition.assignment, dtype=np.int64)
    eu, ev = _edge_arrays(graph)
    requested = 0
    performed = 0
    skipped: list[int] = []
    for cid in range(partition.n_communities):
        target = math.ceil(p * partition.sizes[cid])
        requested += target
        done = 0
        for _ in range(target):
            idx = np.flatnonzero((a[eu] == cid) ^ (a[ev] == cid))
            if idx.size == 0:
                break
            e = idx[rng.integers(idx.size)]
            u, w = eu[e], ev[e]
            a[u], a[w] = a[w], a[u]
            done += 1
        performed += done
        if done < target:
            skipped.append(cid)
    return PerturbResult(
        partition=Partition(a.tolist()),
        strategy="community_based",
        p=p,
        requested_swaps=requested,
        performed_swaps=performed,
        exhausted=bool(skipped),
        skipped_communities=tuple(skipped),
    )


_PERTURB_FUNCS = {
    "edge_based": perturb_edge_based,
    "random": perturb_random,
    "community_based": perturb_community_based,
}


def perturb(
    graph: Graph, partition: Partition, strategy: str, p: float, rng_seed: int
) -> PerturbResult:
    """Apply one perturbation strategy by name."""
    try:
        func = _PERTURB_FUNCS[strategy]
    except KeyError:
        raise ValueError(f"unknown perturbation strategy: {strategy!r}") from None
    return func(graph, partition, p, rng_seed)


@dataclass(frozen=True)
class SweepPoint:
    """Run-averaged scores of perturbed partitions at one noise level."""

    p: float
    modularity: float
    permanence: float
    conductance_complement: float
    cut_ratio_complement: float
    mean_internal_degree: float
    mean_max_external: float
    mean_internal_cc: float
    exhausted_runs: int


@dataclass(frozen=True)
class SweepResult:
    strategy: str
    runs: int
    points: tuple[SweepPoint, ...]
    normalized_modularity: tuple[float, ...]
    normalized_permanence: tuple[float, ...]
    normalized_conductance_complement: tuple[float, ...]
    normalized_cut_ratio_complement: tuple[float, ...]
    unnormalized: tuple[str, ...]


def _normalize(values: list[float]) -> tuple[tuple[float, ...], bool]:
    top = max(values)
    if top <= 0.0:
        return tuple(values), False
    return tuple(v / top for v in values), True


def sweep(
    graph: Graph,
    truth: Partition,
    strategy: str,
    p_values,
    runs: int,
    rng_seed: int,
) -> SweepResult:
    """Score perturbed copies of `truth` over a grid of noise levels.

    Every (noise level, run) cell gets its own derived seed, so the sweep
    is reproducible and cells are independent of each other.
    """
    if strategy not in _PERTURB_FUNCS:
        raise ValueError(f"unknown perturbation strategy: {strategy!r}")
    p_list = [float(p) for p in p_values]
    if not p_list:
        raise ValueError("p_values must not be empty")
    if sorted(p_list) != p_list:
        raise ValueError("p_values must be ascending")
    for p in p_list:
        _check_p(p)
    if runs < 1:
        raise ValueError("runs must be at least 1")
    points: list[SweepPoint] = []
    for pi, p in enumerate(p_list):
        acc = {
            "modularity": 0.0,
            "permanence": 0.0,
            "cond": 0.0,
            "cut": 0.0,
            "internal": 0.0,
            "emax": 0.0,
            "cc": 0.0,
        }
        exhausted_runs = 0
        for run in range(runs):
            cell_seed = derive_seed(rng_seed, "sweep", strategy, pi, run)
            result = perturb(graph, truth, strategy, p, cell_seed)
            part = result.partition
            if result.exhausted:
                exhausted_runs += 1
            acc["modularity"] += modularity(graph, part)
            k = part.n_communities
            acc["cond"] += sum(
                1.0 - conductance(graph, part, c) for c in range(k)
            ) / k
            acc["cut"] += sum(1.0 - cut_ratio(graph, part, c) for c in range(k)) / k
            downs = permanence_breakdowns(graph, part)
            n = graph.n
            acc["permanence"] += sum(b.permanence for b in downs) / n
            acc["internal"] += sum(b.internal_degree for b in downs) / n
            acc["emax"] += sum(b.max_external for b in downs) / n
            acc["cc"] += sum(b.internal_cc for b in downs) / n
        points.append(
            SweepPoint(
                p=p,
                modularity=acc["modularity"] / runs,
                permanence=acc["permanence"] / runs,
                conductance_complement=acc["cond"] / runs,
                cut_ratio_complement=acc["cut"] / runs,
                mean_internal_degree=acc["internal"] / runs,
                mean_max_external=acc["emax"] / runs,
                mean_internal_cc=acc["cc"] / runs,
                exhausted_runs=exhausted_runs,
            )
        )
    unnormalized: list[str] = []
    curves = {}
    for name, getter in (
        ("modularity", lambda pt: pt.modularity),
        ("permanence", lambda pt: pt.permanence),
        ("conductance_complement", lambda pt: pt.conductance_complement),
        ("cut_ratio_complement", lambda pt: pt.cut_ratio_complement),
    ):
        values = [getter(pt) for pt in points]
        normalized, ok = _normalize(values)
        curves[name] = normalized
        if not ok:
            unnormalized.append(name)
    return SweepResult(
        strategy=strategy,
        runs=runs,
        points=tuple(points),
        normalized_modularity=curves["modularity"],
        normalized_permanence=curves["permanence"],
        normalized_conductance_complement=curves["conductance_complement"],
        normalized_cut_ratio_complement=curves["cut_ratio_complement"],
        unnormalized=tuple(unnormalized),
    )
