"""Permanence-based graph community analysis.

A library and CLI around the permanence vertex score: greedy detection by
permanence maximization, classic partition quality metrics, partition
validation, perturbation and sensitivity harnesses, and an exact evaluator
for bridge-vertex placement scenarios.
"""

from .analysis import (
    AssortativityReport,
    BinnedDistribution,
    ComponentProfileRow,
    FarnessProfile,
    GrowthRow,
    OverlapReport,
    SizeDiagnostics,
    SpreadingResult,
    StrengthenRow,
    asymptotic_growth_study,
    bipartite_overlap,
    component_profile,
    farness_profile,
    permanence_assortativity,
    permanence_bin,
    permanence_histogram,
    size_diagnostics,
    spreading_simulation,
    strengthen,
)
from .errors import GraphFormatError, PartitionError, PermagraphError
from .graphs import (
    EdgeListReport,
    Graph,
    Partition,
    check_partition,
    clustering_coefficient,
    dump_edge_list,
    dump_partition,
    edges_among,
    grid,
    load_edge_list,
    load_partition,
    planted_partition,
    ring_of_cliques,
)
from .lemmas import (
    FourCaseResult,
    LemmaCheck,
    LemmaScenario,
    ScenarioSymbols,
    build_lemma_scenario,
    case_partitions,
    four_case_totals,
    lemma_check,
    scenario_symbols,
)
from .maxperm import (
    MOVE_RULES,
    SCAN_MODES,
    SEED_STRATEGIES,
    CommunityEdgeCache,
    DetectorConfig,
    DetectResult,
    SensitivityReport,
    detect,
    detect_with_cache,
    seed_communities,
    sensitivity,
)
from .perturb import (
    PERTURB_STRATEGIES,
    PerturbResult,
    SweepPoint,
    SweepResult,
    perturb,
    perturb_community_based,
    perturb_edge_based,
    perturb_random,
    sweep,
)
from .rng import derive_rng, derive_seed, permutation
from .scoring import (
    CLAMP_EPS,
    PermanenceBreakdown,
    ScoreReport,
    boundary_edges,
    conductance,
    cut_ratio,
    graph_permanence,
    modularity,
    permanence_breakdowns,
    score_report,
    vertex_permanence,
)
from .validation import (
    ValidationReport,
    ari,
    nmi,
    purity,
    validation_report,
    weighted_ari,
    weighted_nmi,
    weighted_purity,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "AssortativityReport",
    "BinnedDistribution",
    "CLAMP_EPS",
    "CommunityEdgeCache",
    "MOVE_RULES",
    "SCAN_MODES",
    "SEED_STRATEGIES",
    "ComponentProfileRow",
    "DetectResult",
    "DetectorConfig",
    "EdgeListReport",
    "FarnessProfile",
    "FourCaseResult",
    "Graph",
    "GraphFormatError",
    "GrowthRow",
    "LemmaCheck",
    "LemmaScenario",
    "OverlapReport",
    "Partition",
    "PartitionError",
    "PermagraphError",
    "PermanenceBreakdown",
    "PERTURB_STRATEGIES",
    "PerturbResult",
    "ScenarioSymbols",
    "ScoreReport",
    "SensitivityReport",
    "SizeDiagnostics",
    "SpreadingResult",
    "StrengthenRow",
    "SweepPoint",
    "SweepResult",
    "ValidationReport",
    "ari",
    "asymptotic_growth_study",
    "bipartite_overlap",
    "boundary_edges",
    "build_lemma_scenario",
    "case_partitions",
    "check_partition",
    "clustering_coefficient",
    "component_profile",
    "conductance",
    "cut_ratio",
    "derive_rng",
    "derive_seed",
    "detect",
    "detect_with_cache",
    "dump_edge_list",
    "dump_partition",
    "edges_among",
    "farness_profile",
    "four_case_totals",
    "graph_permanence",
    "grid",
    "lemma_check",
    "load_edge_list",
    "load_partition",
    "modularity",
    "nmi",
    "permanence_assortativity",
    "permanence_bin",
    "permanence_breakdowns",
    "permanence_histogram",
    "permutation",
    "perturb",
    "perturb_community_based",
    "perturb_edge_based",
    "perturb_random",
    "planted_partition",
    "purity",
    "ring_of_cliques",
    "scenario_symbols",
    "score_report",
    "seed_communities",
    "sensitivity",
    "size_diagnostics",
    "spreading_simulation",
    "strengthen",
    "sweep",
    "validation_report",
    "vertex_permanence",
    "weighted_ari",
    "weighted_nmi",
    "weighted_purity",
]
