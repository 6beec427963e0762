"""Shared fixtures and deterministic hypothesis settings."""

from __future__ import annotations

import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile(
    "suite",
    max_examples=60,
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

FOOTBALL_DIR = Path(__file__).parent / "data" / "football"


@pytest.fixture(scope="session")
def football():
    """The college-football network, if its files have been provided.

    Expects tests/data/football/football.edges and football.truth (formats
    in tests/data/README.md). Skips when absent or when the files do not
    carry the expected network (115 vertices, 613 edges, 12 conferences).
    """
    import permagraph as pg

    edges_path = FOOTBALL_DIR / "football.edges"
    truth_path = FOOTBALL_DIR / "football.truth"
    if not edges_path.exists() or not truth_path.exists():
        pytest.skip(
            "football dataset not available in tests/data/football/ "
            "(no network access in this environment); see tests/data/README.md"
        )
    graph = pg.load_edge_list(edges_path.read_text()).graph
    truth = pg.load_partition(truth_path.read_text(), graph)
    if graph.n != 115 or graph.m != 613 or truth.n_communities != 12:
        pytest.skip(
            f"files in tests/data/football/ are not the expected network "
            f"(found n={graph.n}, m={graph.m}, c={truth.n_communities}; "
            f"expected 115/613/12)"
        )
    return graph, truth
