"""Regular F-free graphs from finite-field constructions, with exact checkers."""

from .algebra import FiniteField, gauss_sum, gf, norm, quad_char, subgroup_char_sum, trace
from .constructions import (
    AbelianGroup,
    ContractError,
    bipartite_sum,
    brown,
    cayley_sum,
    disjoint_union,
    er_polarity,
    h_graph,
    h_star,
    norm_graph,
)
from .graph import Graph, read_edgelist, write_edgelist
from .numtheory import DifferenceSet, bose_chowla, prime_in_interval, prime_power_decompose, quotient_set
from .pipelines import PipelineResult, pipeline_c4, pipeline_k2t, pipeline_k33, pipeline_kst
from .regularize import (
    InfeasibleError,
    SearchBudgetExceeded,
    cross_matching,
    equalize_norm_component,
    hamilton_cycle,
    strip_two_factors,
    two_factor,
)
from .verify import adjacency_spectrum, is_kst_free, laplacian_spectrum, max_codegree, spectral_gap_report, verify_graph

__version__ = "0.1.0"
