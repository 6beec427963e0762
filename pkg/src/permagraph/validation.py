"""Agreement scores between a detected partition and ground truth.

All scores are built from a contingency table of vertex masses. The plain
variants use unit mass per vertex; the weighted variants use vertex degree
as the mass, so high-degree vertices dominate the agreement.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import Graph, Partition


def _contingency(
    truth: Partition, detected: Partition, weights: list[int] | None
) -> tuple[dict[tuple[int, int], float], dict[int, float], dict[int, float], float]:
    if truth.n != detected.n:
        raise ValueError(
            f"partitions cover different vertex counts: {truth.n} vs {detected.n}"
        )
    cells: dict[tuple[int, int], float] = {}
    row: dict[int, float] = {}
    col: dict[int, float] = {}
    total = 0.0
    for v in range(truth.n):
        w = 1.0 if weights is None else float(weights[v])
        if w == 0.0:
            continue
        t = truth.assignment[v]
        d = detected.assignment[v]
        cells[(t, d)] = cells.get((t, d), 0.0) + w
        row[t] = row.get(t, 0.0) + w
        col[d] = col.get(d, 0.0) + w
        total += w
    return cells, row, col, total


def _entropy(masses, total: float) -> float:
    h = 0.0
    for m in masses:
        p = m / total
        if p > 0.0:
            h -= p * math.log(p)
    return h


def _nmi(truth: Partition, detected: Partition, weights: list[int] | None) -> float:
    cells, row, col, total = _contingency(truth, detected, weights)
    if total == 0.0:
        raise ValueError("no vertex mass: weighted scores need at least one edge")
    h_t = _entropy(row.values(), total)
    h_d = _entropy(col.values(), total)
    if h_t == 0.0 and h_d == 0.0:
        return 1.0
    if h_t == 0.0 or h_d == 0.0:
        return 0.0
    mi = 0.0
    for (t, d), m in cells.items():
        p = m / total
        mi += p * math.log(p * total * total / (row[t] * col[d]))
    return 2.0 * mi / (h_t + h_d)


def _pairs(x: float) -> float:
    return x * (x - 1.0) / 2.0


def _ari(truth: Partition, detected: Partition, weights: list[int] | None) -> float:
    cells, row, col, total = _contingency(truth, detected, weights)
    if total == 0.0:
        raise ValueError("no vertex mass: weighted scores need at least one edge")
    sum_cells = sum(_pairs(m) for m in cells.values())
    sum_row = sum(_pairs(m) for m in row.values())
    sum_col = sum(_pairs(m) for m in col.values())
    total_pairs = _pairs(total)
    if total_pairs == 0.0:
        return 1.0 if truth == detected else 0.0
    expected = sum_row * sum_col / total_pairs
    max_index = (sum_row + sum_col) / 2.0
    denom = max_index - expected
    if denom == 0.0:
        return 1.0 if truth == detected else 0.0
    return (sum_cells - expected) / denom


def _purity(detected: Partition, truth: Partition, weights: list[int] | None) -> float:
    cells, _row, _col, total = _contingency(truth, detected, weights)
    if total == 0.0:
        raise ValueError("no vertex mass: weighted scores need at least one edge")
    best: dict[int, float] = {}
    for (_t, d), m in cells.items():
        if m > best.get(d, 0.0):
            best[d] = m
    return sum(best.values()) / total


def nmi(truth: Partition, detected: Partition) -> float:
    """Normalized mutual information (arithmetic-mean normalization)."""
    return _nmi(truth, detected, None)


def ari(truth: Partition, detected: Partition) -> float:
    """Adjusted Rand index via pair counting."""
    return _ari(truth, detected, None)


def purity(detected: Partition, truth: Partition) -> float:
    """Fraction of vertices captured by each detected community's best match."""
    return _purity(detected, truth, None)


def weighted_nmi(graph: Graph, truth: Partition, detected: Partition) -> float:
    """NMI over degree mass instead of vertex counts."""
    return _nmi(truth, detected, list(graph.degrees))


def weighted_ari(graph: Graph, truth: Partition, detected: Partition) -> float:
    """ARI over degree mass instead of vertex counts."""
    return _ari(truth, detected, list(graph.degrees))


def weighted_purity(graph: Graph, detected: Partition, truth: Partition) -> float:
    """Purity over degree mass instead of vertex counts."""
    return _purity(detected, truth, list(graph.degrees))


@dataclass(frozen=True)
class ValidationReport:
    nmi: float
    ari: float
    purity: float
    weighted_nmi: float
    weighted_ari: float
    weighted_purity: float

    def mean(self) -> float:
        return (
            self.nmi
            + self.ari
            + self.purity
            + self.weighted_nmi
            + self.weighted_ari
            + self.weighted_purity
        ) / 6.0


def validation_report(graph: Graph, truth: Partition, detected: Partition) -> ValidationReport:
    """All six agreement scores in one record."""
    return ValidationReport(
        nmi=nmi(truth, detected),
        ari=ari(truth, detected),
        purity=purity(detected, truth),
        weighted_nmi=weighted_nmi(graph, truth, detected),
        weighted_ari=weighted_ari(graph, truth, detected),
        weighted_purity=weighted_purity(graph, detected, truth),
    )
