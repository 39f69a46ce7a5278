"""Degree assortativity of group-based (gambit-of-the-group) social networks:
construction from census data, measures, sampling-bias simulation and
group-size-preserving null models."""

__version__ = "0.1.0"

from .graph import Network, degree, dichotomize, edge_degree_pairs, filter_edges  # noqa: E402
from .measures import (  # noqa: E402
    AssortativityResult,
    knn_curve,
    local_degree_difference,
    newman_assortativity,
    rich_club,
    spearman_assortativity,
)
from .gambit import CensusData, OccurrenceMatrix, accumulate, network_from_matrix, to_occurrence_matrix  # noqa: E402
from .nullmodel import permutation_test, resample_groups, swap_step  # noqa: E402
from .simulate import SimulationConfig, filtering_experiment, run_simulation, summarize_trace  # noqa: E402
from .npstats import (  # noqa: E402
    kruskal_wallis,
    load_records,
    meta_analysis,
    rank_with_ties,
    wilcoxon_rank_sum,
    wilcoxon_signed_rank,
)
