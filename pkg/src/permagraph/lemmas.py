"""Bridge-vertex case analysis.

A bridge vertex v sits between two communities A and B, with alpha edges
into A and beta edges into B, and A/B sharing no edge with each other.
Four placements are possible: v joins A, v joins B, everything merges,
or all three stay separate. This module builds such scenarios as explicit
graphs, totals the exact vertex permanence of every placement, and
evaluates closed-form discriminants predicting which placement wins.

The discriminants assume homogeneous scenarios: every attachment vertex
on one side has the same internal degree and clustering values. Two known
misprints in the source derivations are corrected here (and the printed
variants kept for reference): the sparse switch-side discriminant's third
group reads alpha*(1-2*C_A)/(I_alpha+1) + beta*(2*C_B-1)/(I_beta+1), and
the join-vs-merge discriminant carries (C^v_A - C^v_B), not their sum.
Both corrections are cross-checked against exact summation in the tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graphs import Graph, Partition, edges_among
from .rng import permutation
from .scoring import permanence_breakdowns

WIRINGS = ("tight", "sparse")
GADGETS = ("clique", "cycle", "path", "empty")

SYMBOL_TOL = 1e-12


@dataclass(frozen=True)
class LemmaScenario:
    """Two explicit communities plus a bridge vertex."""

    graph: Graph
    community_a: tuple[int, ...]
    community_b: tuple[int, ...]
    bridge: int
    alpha: int
    beta: int
    wiring: tuple[str, str]
    gadgets: tuple[str, str]


def _gadget_edges(ids: list[int], kind: str) -> list[tuple[int, int]]:
    q = len(ids)
    if kind == "clique":
        return [(ids[i], ids[j]) for i in range(q) for j in range(i + 1, q)]
    if kind == "cycle":
        if q < 3:
            raise ValueError("cycle gadget needs at least 3 vertices")
        return [(ids[i], ids[(i + 1) % q]) for i in range(q)]
    if kind == "path":
        if q < 2:
            raise ValueError("path gadget needs at least 2 vertices")
        return [(ids[i], ids[i + 1]) for i in range(q - 1)]
    if kind == "empty":
        return []
    raise ValueError(f"unknown gadget kind: {kind!r}")


def _side_edges(ids: list[int], count: int, wiring: str, gadget: str):
    """Edges of one community; attachment set = first `count` ids."""
    size = len(ids)
    if wiring == "tight":
        if size < max(count, 2):
            raise ValueError("tight community needs size >= max(alpha, 2)")
        return [(ids[i], ids[j]) for i in range(size) for j in range(i + 1, size)]
    if wiring == "sparse":
        if size < count + 1:
            raise ValueError(
                "sparse community needs at least one non-attachment vertex"
            )
        anchors = ids[count:]
        edges = _gadget_edges(anchors, gadget)
        edges.extend((a, g) for a in ids[:count] for g in anchors)
        return edges
    raise ValueError(f"unknown wiring: {wiring!r}")


def build_lemma_scenario(
    alpha: int,
    beta: int,
    wiring="sparse",
    sizes: tuple[int, int] | None = None,
    rng_seed: int | None = None,
    gadgets: tuple[str, str] = ("clique", "clique"),
) -> LemmaScenario:
    """Construct a bridge scenario graph.

    `wiring` is one mode for both sides or a (side_a, side_b) pair. Tight
    wiring makes the whole community one clique (the bridge's neighbours
    included); sparse wiring keeps the attachment vertices mutually
    unconnected, each adjacent to all of a shared anchor `gadget`.
    `sizes` fixes the two community sizes; defaults are the smallest exact
    construction (alpha for tight, alpha + 2 for sparse). When `rng_seed`
    is given, vertex ids are shuffled by a derived permutation — the
    scenario content is unchanged, only the labelling.
    """
    if alpha < 1 or beta < 1:
        raise ValueError("alpha and beta must be at least 1")
    if isinstance(wiring, str):
        wiring = (wiring, wiring)
    wiring = (str(wiring[0]), str(wiring[1]))
    for w in wiring:
        if w not in WIRINGS:
            raise ValueError(f"unknown wiring: {w!r}")
    gadgets = (str(gadgets[0]), str(gadgets[1]))
    if sizes is None:
        sizes = (
            max(alpha, 2) if wiring[0] == "tight" else alpha + 2,
            max(beta, 2) if wiring[1] == "tight" else beta + 2,
        )
    size_a, size_b = int(sizes[0]), int(sizes[1])
    if size_a < alpha or size_b < beta:
        raise ValueError("community sizes must cover the attachment counts")
    ids_a = list(range(size_a))
    ids_b = list(range(size_a, size_a + size_b))
    v = size_a + size_b
    edges = _side_edges(ids_a, alpha, wiring[0], gadgets[0])
    edges += _side_edges(ids_b, beta, wiring[1], gadgets[1])
    edges += [(v, u) for u in ids_a[:alpha]]
    edges += [(v, u) for u in ids_b[:beta]]
    n = v + 1
    if rng_seed is not None:
        relabel = permutation(rng_seed, n, "scenario-relabel")
        edges = [(relabel[x], relabel[y]) for x, y in edges]
        ids_a = [relabel[x] for x in ids_a]
        ids_b = [relabel[x] for x in ids_b]
        v = relabel[v]
    return LemmaScenario(
        graph=Graph(n, edges),
        community_a=tuple(sorted(ids_a)),
        community_b=tuple(sorted(ids_b)),
        bridge=v,
        alpha=alpha,
        beta=beta,
        wiring=wiring,
        gadgets=gadgets,
    )


CASES = ("join_a", "join_b", "merge", "separate")


def case_partitions(scenario: LemmaScenario) -> dict[str, Partition]:
    """The four placements of the bridge vertex as partitions."""
    n = scenario.graph.n
    v = scenario.bridge
    base = [0] * n
    for u in scenario.community_b:
        base[u] = 1
    join_a = list(base)
    join_a[v] = 0
    join_b = list(base)
    join_b[v] = 1
    separate = list(base)
    separate[v] = 2
    return {
        "join_a": Partition(join_a),
        "join_b": Partition(join_b),
        "merge": Partition([0] * n),
        "separate": Partition(separate),
    }


@dataclass(frozen=True)
class ScenarioSymbols:
    """Quantities the closed forms are written in, measured from the graph.

    i_* and c_* are per-attachment means (exact when `homogeneous`);
    c_a/c_b exclude the bridge, c_alpha/c_beta include it. cv_* is the
    clustering of the bridge's neighbour set inside each community.
    p_rest is the permanence total of all non-scenario vertices, which is
    the same under every placement.
    """

    alpha: int
    beta: int
    i_alpha: float
    i_beta: float
    c_a: float
    c_b: float
    c_alpha: float
    c_beta: float
    cv_a: float
    cv_b: float
    p_rest: float
    homogeneous: bool


def _side_measures(graph: Graph, members: frozenset[int], attach: list[int], v: int):
    rows = []
    for a in attach:
        internal = sorted(u for u in graph.adj[a] if u in members)
        i_a = len(internal)
        links = edges_among(graph, internal)
        c_plain = links / (i_a * (i_a - 1) / 2) if i_a >= 2 else 0.0
        links_v = links + sum(1 for u in internal if u in graph.adj_sets[v])
        c_with = links_v / ((i_a + 1) * i_a / 2) if i_a + 1 >= 2 else 0.0
        rows.append((i_a, c_plain, c_with))
    return rows


def _validate_scenario(scenario: LemmaScenario) -> None:
    g = scenario.graph
    a_set = frozenset(scenario.community_a)
    b_set = frozenset(scenario.community_b)
    v = scenario.bridge
    if a_set & b_set or v in a_set or v in b_set:
        raise ValueError("scenario pieces overlap")
    if len(a_set) + len(b_set) + 1 != g.n:
        raise ValueError("scenario pieces must cover the whole graph")
    for u in scenario.community_a:
        if any(w != v and w not in a_set for w in g.adj[u]):
            raise ValueError("community A has edges outside A beyond the bridge")
    for u in scenario.community_b:
        if any(w != v and w not in b_set for w in g.adj[u]):
            raise ValueError("community B has edges outside B beyond the bridge")
    if not any(u in a_set for u in g.adj[v]) or not any(u in b_set for u in g.adj[v]):
        raise ValueError("bridge must touch both communities")


def scenario_symbols(scenario: LemmaScenario) -> ScenarioSymbols:
    """Measure the closed-form symbols from the scenario graph."""
    _validate_scenario(scenario)
    g = scenario.graph
    a_set = frozenset(scenario.community_a)
    b_set = frozenset(scenario.community_b)
    v = scenario.bridge
    attach_a = sorted(u for u in g.adj[v] if u in a_set)
    attach_b = sorted(u for u in g.adj[v] if u in b_set)
    rows_a = _side_measures(g, a_set, attach_a, v)
    rows_b = _side_measures(g, b_set, attach_b, v)

    def close(rows):
        first = rows[0]
        return all(
            abs(r[0] - first[0]) <= SYMBOL_TOL
            and abs(r[1] - first[1]) <= SYMBOL_TOL
            and abs(r[2] - first[2]) <= SYMBOL_TOL
            for r in rows
        )

    homogeneous = close(rows_a) and close(rows_b)
    alpha = len(attach_a)
    beta = len(attach_b)
    cv_a = (
        edges_among(g, attach_a) / (alpha * (alpha - 1) / 2) if alpha >= 2 else 0.0
    )
    cv_b = edges_among(g, attach_b) / (beta * (beta - 1) / 2) if beta >= 2 else 0.0
    scenario_vertices = set(attach_a) | set(attach_b) | {v}
    parts = case_partitions(scenario)
    downs = permanence_breakdowns(g, parts["separate"])
    p_rest = sum(b.permanence for b in downs if b.vertex not in scenario_vertices)
    return ScenarioSymbols(
        alpha=alpha,
        beta=beta,
        i_alpha=sum(r[0] for r in rows_a) / alpha,
        i_beta=sum(r[0] for r in rows_b) / beta,
        c_a=sum(r[1] for r in rows_a) / alpha,
        c_b=sum(r[1] for r in rows_b) / beta,
        c_alpha=sum(r[2] for r in rows_a) / alpha,
        c_beta=sum(r[2] for r in rows_b) / beta,
        cv_a=cv_a,
        cv_b=cv_b,
        p_rest=p_rest,
        homogeneous=homogeneous,
    )


def closed_case_totals(s: ScenarioSymbols) -> tuple[float, float, float, float]:
    """The four case totals assembled from measured symbols."""
    a, b = s.alpha, s.beta
    d = a + b
    a_stays = a * (s.i_alpha / (s.i_alpha + 1.0) - (1.0 - s.c_a))
    b_stays = b * (s.i_beta / (s.i_beta + 1.0) - (1.0 - s.c_b))
    join_a = s.p_rest + a * s.c_alpha + (a / (d * b) - (1.0 - s.cv_a)) + b_stays
    join_b = s.p_rest + a_stays + (b / (d * a) - (1.0 - s.cv_b)) + b * s.c_beta
    merge = s.p_rest + a * s.c_alpha + _bridge_cc_merged(s) + b * s.c_beta
    separate = s.p_rest + a_stays + b_stays
    return join_a, join_b, merge, separate


def _bridge_cc_merged(s: ScenarioSymbols) -> float:
    a, b = s.alpha, s.beta
    delta = (a + b) * (a + b - 1.0)
    return (a * (a - 1.0) * s.cv_a + b * (b - 1.0) * s.cv_b) / delta


def switch_discriminant_tight(s: ScenarioSymbols) -> float:
    """Sign of (join A) - (join B) when attachment cc is unchanged by joining."""
    a, b = s.alpha, s.beta
    return (
        (a - b) / (a * b)
        + (s.cv_a - s.cv_b)
        + a / (s.i_alpha + 1.0)
        - b / (s.i_beta + 1.0)
    )


def switch_discriminant_sparse(s: ScenarioSymbols) -> float:
    """Sparse-relation variant of the switch discriminant (corrected grouping)."""
    a, b = s.alpha, s.beta
    return (
        (a - b) / (a * b)
        + (s.cv_a - s.cv_b)
        + a * (1.0 - 2.0 * s.c_a) / (s.i_alpha + 1.0)
        + b * (2.0 * s.c_b - 1.0) / (s.i_beta + 1.0)
    )


def switch_discriminant_sparse_stated(s: ScenarioSymbols) -> float:
    """The printed sparse switch discriminant, kept for reference.

    Its third group does not follow from the case expressions; see
    switch_discriminant_sparse for the corrected form.
    """
    a, b = s.alpha, s.beta
    return (
        (a - b) / (a * b)
        + (s.cv_a - s.cv_b)
        + a * (s.c_a + 1.0) / (s.i_alpha + 1.0)
        - b * (s.c_b + 1.0) / (s.i_beta + 1.0)
    )


def join_merge_discriminant(s: ScenarioSymbols, sparse_b: bool) -> float:
    """Sign of (join A) - (merge), corrected grouping.

    `sparse_b` selects which relation C^beta follows; the sparse variant
    adds the 2*beta*C_B/(I_beta+1) term.
    """
    a, b = s.alpha, s.beta
    delta = (a + b) * (a + b - 1.0)
    value = (
        a / ((a + b) * b)
        - b / (s.i_beta + 1.0)
        - 1.0
        + b * (b - 1.0) * (s.cv_a - s.cv_b) / delta
        + 2.0 * a * b * s.cv_a / delta
    )
    if sparse_b:
        value += 2.0 * b * s.c_b / (s.i_beta + 1.0)
    return value


def join_merge_discriminant_stated(s: ScenarioSymbols, sparse_b: bool) -> float:
    """The printed join-vs-merge discriminant with the summed bridge terms."""
    a, b = s.alpha, s.beta
    delta = (a + b) * (a + b - 1.0)
    value = (
        a / ((a + b) * b)
        - b / (s.i_beta + 1.0)
        - 1.0
        + b * (b - 1.0) * (s.cv_a + s.cv_b) / delta
        + 2.0 * a * b * s.cv_a / delta
    )
    if sparse_b:
        value += 2.0 * b * s.c_b / (s.i_beta + 1.0)
    return value


def join_merge_ratio_form(s: ScenarioSymbols) -> float:
    """Ratio-substituted restatement of the sparse join-vs-merge discriminant.

    Writes the bridge terms through gamma = alpha/beta while dropping the
    1/beta corrections, so it is an approximation whenever the bridge's
    neighbour sets have internal edges; it coincides with the corrected
    form when cv_a = cv_b = 0.
    """
    a, b = s.alpha, s.beta
    g = a / b
    return (
        g / ((g + 1.0) * b)
        - 1.0
        + (s.cv_a * (2.0 * g + 1.0) - s.cv_b) / (g + 1.0) ** 2
        + b * (2.0 * s.c_b - 1.0) / (s.i_beta + 1.0)
    )


def merge_separate_discriminant(s: ScenarioSymbols, sparse: bool) -> float:
    """Sign of (merge) - (all separate)."""
    a, b = s.alpha, s.beta
    v3 = _bridge_cc_merged(s)
    if not sparse:
        return v3 + a / (s.i_alpha + 1.0) + b / (s.i_beta + 1.0)
    return (
        v3
        - a * (2.0 * s.c_a - 1.0) / (s.i_alpha + 1.0)
        - b * (2.0 * s.c_b - 1.0) / (s.i_beta + 1.0)
    )


def join_separate_discriminant(s: ScenarioSymbols, sparse: bool) -> float:
    """Sign of (join A) - (all separate). Uses only A-side quantities."""
    a, b = s.alpha, s.beta
    if not sparse:
        return a * (1.0 / (s.i_alpha + 1.0) + 1.0 / ((a + b) * b)) + s.cv_a - 1.0
    return (
        a * ((1.0 - 2.0 * s.c_a) / (s.i_alpha + 1.0) + 1.0 / ((a + b) * b))
        + s.cv_a
        - 1.0
    )


@dataclass(frozen=True)
class FourCaseResult:
    """Exact and closed-form totals for the four bridge placements.

    p_case1..p_case4 are exact permanence sums over every vertex for:
    v joins A; v joins B; everything merged; all separate. The closed_*
    fields assemble the same totals from measured symbols (equal on
    homogeneous scenarios). z1/z2 are the switch-side discriminants
    (tight/sparse attachment relations); x/x_sparse_b the join-vs-merge
    discriminants.
    """

    p_case1: float
    p_case2: float
    p_case3: float
    p_case4: float
    closed_case1: float
    closed_case2: float
    closed_case3: float
    closed_case4: float
    z1: float
    z2: float
    x: float
    x_sparse_b: float
    symbols: ScenarioSymbols


def four_case_totals(scenario: LemmaScenario) -> FourCaseResult:
    """Total the exact permanence of all four placements, plus closed forms."""
    parts = case_partitions(scenario)
    totals = {}
    for name, part in parts.items():
        downs = permanence_breakdowns(scenario.graph, part)
        totals[name] = sum(b.permanence for b in downs)
    s = scenario_symbols(scenario)
    c1, c2, c3, c4 = closed_case_totals(s)
    return FourCaseResult(
        p_case1=totals["join_a"],
        p_case2=totals["join_b"],
        p_case3=totals["merge"],
        p_case4=totals["separate"],
        closed_case1=c1,
        closed_case2=c2,
        closed_case3=c3,
        closed_case4=c4,
        z1=switch_discriminant_tight(s),
        z2=switch_discriminant_sparse(s),
        x=join_merge_discriminant(s, sparse_b=False),
        x_sparse_b=join_merge_discriminant(s, sparse_b=True),
        symbols=s,
    )


def _sign(value: float, tol: float) -> int:
    if value > tol:
        return 1
    if value < -tol:
        return -1
    return 0


def _tight_a(s: ScenarioSymbols) -> bool:
    return abs(s.c_alpha - s.c_a) <= SYMBOL_TOL


def _tight_b(s: ScenarioSymbols) -> bool:
    return abs(s.c_beta - s.c_b) <= SYMBOL_TOL


def _sparse_a(s: ScenarioSymbols) -> bool:
    want = s.c_a * (s.i_alpha - 1.0) / (s.i_alpha + 1.0)
    return abs(s.c_alpha - want) <= SYMBOL_TOL


def _sparse_b(s: ScenarioSymbols) -> bool:
    want = s.c_b * (s.i_beta - 1.0) / (s.i_beta + 1.0)
    return abs(s.c_beta - want) <= SYMBOL_TOL


@dataclass(frozen=True)
class LemmaCheck:
    """One closed-form sign prediction checked against the exact oracle."""

    check: str
    applicable: bool
    reason: str | None
    closed_value: float
    exact_difference: float
    predicted_sign: int
    oracle_sign: int
    agree: bool


def lemma_check(scenario: LemmaScenario, zero_tol: float = 1e-9) -> tuple[LemmaCheck, ...]:
    """Evaluate every closed-form prediction whose hypotheses the scenario meets.

    Checks whose hypotheses fail are reported with `applicable=False` and
    a reason instead of being asserted; values are still filled in. On a
    non-homogeneous scenario everything is inapplicable (the closed forms
    average over attachment vertices).
    """
    r = four_case_totals(scenario)
    s = r.symbols
    d12 = r.p_case1 - r.p_case2
    d13 = r.p_case1 - r.p_case3
    d34 = r.p_case3 - r.p_case4
    d14 = r.p_case1 - r.p_case4
    catalog = []

    def add(name, hypothesis_met, reason, closed, exact):
        catalog.append((name, hypothesis_met, reason, closed, exact))

    tight_a, tight_b = _tight_a(s), _tight_b(s)
    sparse_a, sparse_b = _sparse_a(s), _sparse_b(s)
    add(
        "switch_tight",
        tight_a and tight_b,
        "needs C^alpha = C_A and C^beta = C_B",
        switch_discriminant_tight(s),
        d12,
    )
    add(
        "switch_sparse",
        sparse_a and sparse_b,
        "needs the sparse attachment relation on both sides",
        switch_discriminant_sparse(s),
        d12,
    )
    add(
        "join_merge_tight_b",
        tight_b,
        "needs C^beta = C_B",
        join_merge_discriminant(s, sparse_b=False),
        d13,
    )
    add(
        "join_merge_sparse_b",
        sparse_b,
        "needs the sparse attachment relation on side B",
        join_merge_discriminant(s, sparse_b=True),
        d13,
    )
    add(
        "merge_separate_tight",
        tight_a and tight_b,
        "needs C^alpha = C_A and C^beta = C_B",
        merge_separate_discriminant(s, sparse=False),
        d34,
    )
    add(
        "merge_separate_sparse",
        sparse_a and sparse_b,
        "needs the sparse attachment relation on both sides",
        merge_separate_discriminant(s, sparse=True),
        d34,
    )
    add(
        "join_separate_tight",
        tight_a,
        "needs C^alpha = C_A",
        join_separate_discriminant(s, sparse=False),
        d14,
    )
    add(
        "join_separate_sparse",
        sparse_a,
        "needs the sparse attachment relation on side A",
        join_separate_discriminant(s, sparse=True),
        d14,
    )
    add(
        "single_bridge_join_merge",
        s.beta == 1 and sparse_b,
        "needs beta = 1 (and the sparse side-B relation it implies)",
        (2.0 * s.cv_a - 1.0) / (s.alpha + 1.0)
        + (2.0 * s.c_b - 1.0) / (s.i_beta + 1.0),
        d13,
    )
    add(
        "anchored_join_merge",
        sparse_b
        and s.c_b >= 0.9
        and s.beta >= s.i_beta + 1
        and s.alpha >= s.beta
        and s.cv_a >= s.cv_b / 3.0,
        "needs sparse side B with C_B near 1, beta >= I_beta + 1, "
        "alpha >= beta, cv_a >= cv_b/3",
        join_merge_discriminant(s, sparse_b=True),
        d13,
    )
    add(
        "symmetric_join_merge",
        s.alpha == s.beta
        and sparse_b
        and abs(s.cv_a - s.cv_b) <= SYMBOL_TOL
        and s.cv_a <= SYMBOL_TOL,
        "needs alpha = beta, sparse side B, cv_a = cv_b = 0 "
        "(the printed form approximates the bridge term otherwise)",
        1.0 / (2.0 * s.beta)
        - 1.0
        + s.cv_a / 2.0
        + s.beta * (2.0 * s.c_b - 1.0) / (s.i_beta + 1.0),
        d13,
    )
    add(
        "symmetric_join_separate",
        s.alpha == s.beta and sparse_a,
        "needs alpha = beta and the sparse side-A relation",
        join_separate_discriminant(s, sparse=True),
        d14,
    )
    out = []
    for name, met, why, closed, exact in catalog:
        applicable = bool(met and s.homogeneous)
        if not s.homogeneous:
            reason = "scenario is not homogeneous"
        elif not met:
            reason = why
        else:
            reason = None
        predicted = _sign(closed, zero_tol)
        oracle = _sign(exact, zero_tol)
        out.append(
            LemmaCheck(
                check=name,
                applicable=applicable,
                reason=reason,
                closed_value=closed,
                exact_difference=exact,
                predicted_sign=predicted,
                oracle_sign=oracle,
                agree=predicted == oracle,
            )
        )
    return tuple(out)
