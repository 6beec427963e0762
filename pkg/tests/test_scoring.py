"""Permanence and the classic partition scores, against brute-force oracles."""

import math
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

import permagraph as pg
from permagraph.scoring import CLAMP_EPS

import oracles


def graph_with_partition():
    @st.composite
    def build(draw):
        seed = draw(st.integers(0, 100_000))
        rng = random.Random(seed)
        n, edges = oracles.random_graph(rng, n_max=10)
        assignment = oracles.random_assignment(rng, n)
        return n, edges, assignment

    return build()


# --- Permanence vs oracle -----------------------------------------------------

@given(graph_with_partition())
def test_vertex_permanence_matches_oracle(data):
    n, edges, assignment = data
    g = pg.Graph(n, edges)
    p = pg.Partition(assignment)
    for v in range(n):
        got = pg.vertex_permanence(g, p, v)
        want, want_clamped = oracles.permanence_vertex(n, edges, assignment, v)
        assert abs(got.permanence - want) <= 1e-12
        assert got.clamped == want_clamped
        assert -1.0 < got.permanence <= 1.0


@given(graph_with_partition())
def test_graph_permanence_is_mean_of_vertices(data):
    n, edges, assignment = data
    g = pg.Graph(n, edges)
    p = pg.Partition(assignment)
    downs = pg.permanence_breakdowns(g, p)
    assert abs(pg.graph_permanence(g, p) - sum(b.permanence for b in downs) / n) <= 1e-12


def test_permanence_boundary_rules_exact():
    # interior of a clique community: no external edges, c_in = 1
    g, truth = pg.ring_of_cliques(10, 5)
    b = pg.vertex_permanence(g, truth, 2)
    assert b.permanence == 1.0 and b.max_external == 0

    # bridge vertex of the ring: I=4, D=5, E_max=1, c_in=1 -> 0.8
    b = pg.vertex_permanence(g, truth, 0)
    assert b.permanence == pytest.approx(0.8, abs=1e-15)

    # singleton community -> 0 even with external edges
    g2 = pg.Graph(3, [(0, 1), (1, 2)])
    p2 = pg.Partition([0, 1, 1])
    assert pg.vertex_permanence(g2, p2, 0).permanence == 0.0
    assert pg.vertex_permanence(g2, p2, 0).singleton

    # isolated vertex (degree 0) in a shared community -> 0, flagged isolated
    g3 = pg.Graph(3, [(0, 1)])
    p3 = pg.Partition([0, 0, 0])
    b3 = pg.vertex_permanence(g3, p3, 2)
    assert b3.permanence == 0.0 and b3.isolated

    # no-external vertex -> c_in (here 0: two internal neighbours, unconnected)
    g4 = pg.Graph(3, [(0, 1), (0, 2)])
    p4 = pg.Partition([0, 0, 0])
    b4 = pg.vertex_permanence(g4, p4, 0)
    assert b4.permanence == 0.0 and b4.max_external == 0

    # I = 0 with external edges -> clamped just above -1
    g5 = pg.Graph(3, [(0, 1), (0, 2)])
    p5 = pg.Partition([0, 1, 1])
    b5 = pg.vertex_permanence(g5, p5, 1)  # vertex 1: all neighbours external
    assert b5.permanence == -1.0 + CLAMP_EPS
    assert b5.clamped


def test_singleton_precedes_isolated():
    # a degree-0 vertex alone in its community reports singleton, value 0
    g = pg.Graph(2, [])
    p = pg.Partition([0, 1])
    b = pg.vertex_permanence(g, p, 0)
    assert b.permanence == 0.0
    assert b.singleton


def test_graph_permanence_examples():
    g, truth = pg.ring_of_cliques(10, 5)
    assert abs(pg.graph_permanence(g, truth) - 0.92) <= 1e-12

    # two disjoint 4-cliques, each its own community: every vertex at maximum
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    edges += [(a + 4, b + 4) for a, b in edges]
    g2 = pg.Graph(8, edges)
    p2 = pg.Partition([0] * 4 + [1] * 4)
    assert pg.graph_permanence(g2, p2) == 1.0

    with pytest.raises(ValueError):
        pg.graph_permanence(pg.Graph(0, []), pg.Partition([]))


# --- Modularity ---------------------------------------------------------------

@given(graph_with_partition())
def test_modularity_matches_pair_sum_oracle(data):
    n, edges, assignment = data
    g = pg.Graph(n, edges)
    p = pg.Partition(assignment)
    want = oracles.modularity_pairsum(n, edges, assignment)
    if want is None:
        with pytest.raises(ValueError):
            pg.modularity(g, p)
    else:
        assert abs(pg.modularity(g, p) - want) <= 1e-12


def test_modularity_hand_values():
    # two disjoint triangles, each its own community: Q = 1 - 1/2 = 0.5
    g = pg.Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    p = pg.Partition([0, 0, 0, 1, 1, 1])
    assert pg.modularity(g, p) == pytest.approx(0.5, abs=1e-15)

    g2, truth2 = pg.ring_of_cliques(10, 5)
    assert pg.modularity(g2, truth2) == pytest.approx(89 / 110, abs=1e-12)


# --- Conductance and cut ratio --------------------------------------------------

@given(graph_with_partition())
def test_conductance_and_cut_ratio_match_oracles(data):
    n, edges, assignment = data
    g = pg.Graph(n, edges)
    p = pg.Partition(assignment)
    for cid in range(p.n_communities):
        assert abs(
            pg.conductance(g, p, cid) - oracles.conductance_community(n, edges, assignment, cid)
        ) <= 1e-12
        assert abs(
            pg.cut_ratio(g, p, cid) - oracles.cut_ratio_community(n, edges, assignment, cid)
        ) <= 1e-12


def test_conductance_and_cut_ratio_hand_values():
    g, truth = pg.ring_of_cliques(10, 5)
    assert pg.conductance(g, truth, 0) == pytest.approx(1 / 11, abs=1e-15)
    assert pg.cut_ratio(g, truth, 0) == pytest.approx(2 / 225, abs=1e-15)

    # whole graph as one community: degenerate by convention
    whole = pg.Partition([0] * g.n)
    assert pg.conductance(g, whole, 0) == 0.0
    assert pg.cut_ratio(g, whole, 0) == 0.0


def test_boundary_edges():
    g = pg.Graph(4, [(0, 1), (1, 2), (2, 3)])
    p = pg.Partition([0, 0, 1, 1])
    assert pg.boundary_edges(g, p, 0) == 1
    assert pg.boundary_edges(g, p, 1) == 1
    assert pg.boundary_edges(g, pg.Partition([0, 1, 1, 0]), 1) == 2


# --- ScoreReport ---------------------------------------------------------------

def test_score_report_ring():
    g, truth = pg.ring_of_cliques(10, 5)
    r = pg.score_report(g, truth)
    assert abs(r.permanence - 0.92) <= 1e-12
    assert r.conductance_complement == pytest.approx(10 / 11, abs=1e-12)
    assert r.modularity == pytest.approx(89 / 110, abs=1e-12)
    assert r.cut_ratio_complement == pytest.approx(1 - 2 / 225, abs=1e-12)
    assert r.clamped_vertices == 0
    assert not r.size_weighted


def test_score_report_disjoint_cliques():
    edges = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    edges += [(a + 4, b + 4) for a, b in edges]
    g = pg.Graph(8, edges)
    p = pg.Partition([0] * 4 + [1] * 4)
    r = pg.score_report(g, p)
    assert r.modularity > 0
    assert r.conductance_complement == 1.0
    assert r.cut_ratio_complement == 1.0
    assert r.permanence == 1.0


def test_score_report_size_weighting():
    # three communities of sizes 3, 2, 1 with distinct conductances:
    # triangle cut 1 / vol 7 -> min(7, 5) = 5 -> 1/5
    # pair {3,4} cut 2 / vol 4 -> min(4, 8) = 4 -> 1/2
    # singleton {5} cut 1 / vol 1 -> 1.0
    g = pg.Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (0, 3), (4, 5)])
    p = pg.Partition([0, 0, 0, 1, 1, 2])
    plain = pg.score_report(g, p)
    weighted = pg.score_report(g, p, size_weighted=True)
    assert weighted.size_weighted
    assert plain.conductance_complement == pytest.approx(
        1 - (1 / 5 + 1 / 2 + 1.0) / 3, abs=1e-12
    )
    assert weighted.conductance_complement == pytest.approx(
        1 - (3 * (1 / 5) + 2 * (1 / 2) + 1 * 1.0) / 6, abs=1e-12
    )
    assert plain.conductance_complement != weighted.conductance_complement


def test_score_report_counts_clamped_vertices():
    g = pg.Graph(3, [(0, 1), (0, 2)])
    p = pg.Partition([0, 1, 1])
    r = pg.score_report(g, p)
    # vertex 1 and 2 share a community but have no internal edges
    assert r.clamped_vertices == 2
