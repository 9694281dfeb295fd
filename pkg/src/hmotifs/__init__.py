"""Hypergraph motif (h-motif) counting, sampling and characteristic profiles."""

__version__ = "0.1.0"

from .exact import (
    CountVector,
    OverlapStats,
    count_exact,
    enumerate_instances,
    instance_array,
    overlap_stats,
    per_hyperedge_features,
)
from .exceptions import (
    ClassificationError,
    EmptyHypergraphError,
    EnumerationAborted,
    HypergraphError,
    InputFormatError,
    ResourceLimitError,
)
from .hypergraph import Hypergraph, degree_stats, load_hypergraph, write_hypergraph
from .memo import NeighborhoodProvider, neighborhood_sizes, parse_budget, wedge_sampling_with_cache
from .motifs import (
    N_MOTIFS,
    OPEN_IDS,
    MotifTable,
    build_motif_table,
    classify_triple,
    motif_table,
    region_cardinalities,
)
from .profile import (
    SignificanceVector,
    characteristic_profile,
    cp_similarity_matrix,
    rank_difference,
    relative_count,
    significance,
)
from .projection import ProjectedGraph, neighborhood, project, wedge_index
from .randomize import (
    BipartiteView,
    RandomizationConfig,
    from_bipartite,
    null_counts,
    randomize_hypergraph,
    to_bipartite,
)
from .sampling import (
    EstimateVector,
    SamplerConfig,
    count_approx_edge,
    count_approx_wedge,
    relative_error,
    theoretical_variance_edge,
    theoretical_variance_wedge,
)
from .estimators import MotifCounter, SignificanceProfiler
