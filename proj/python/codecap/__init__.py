"""Random bipartite parity-check codes and fractional graph capacity.

Thin re-export of the compiled core. Matrices are lists of 0/1 strings
(one string per parity row); graphs are (n, edges) with 0-indexed vertex
pairs.
"""

from ._core import (
    CodecapError,
    InfeasibleError,
    ValidationError,
    __version__,
    alpha,
    ball_size_exact,
    bound_delta0,
    bound_e_div,
    bound_e_up,
    capacity_certificates,
    capacity_registry_lookup,
    check_constraint,
    choose_t,
    code_metrics,
    degree_stats,
    diversity_index,
    entropy,
    expected_ball_size,
    f_bound,
    hamming_distance,
    hn_exact_probability,
    min_distance,
    monte_carlo_event,
    nullspace,
    parity_even_prob,
    parse_graph_file,
    rank_gf2,
    rejection_search,
    sample_biadjacency,
    diversity_floor,
    capacity_bounds,
    recursion_check,
)

__all__ = [
    "CodecapError",
    "InfeasibleError",
    "ValidationError",
    "__version__",
    "alpha",
    "ball_size_exact",
    "bound_delta0",
    "bound_e_div",
    "bound_e_up",
    "capacity_certificates",
    "capacity_registry_lookup",
    "check_constraint",
    "choose_t",
    "code_metrics",
    "degree_stats",
    "diversity_index",
    "entropy",
    "expected_ball_size",
    "f_bound",
    "hamming_distance",
    "hn_exact_probability",
    "min_distance",
    "monte_carlo_event",
    "nullspace",
    "parity_even_prob",
    "parse_graph_file",
    "rank_gf2",
    "rejection_search",
    "sample_biadjacency",
    "diversity_floor",
    "capacity_bounds",
    "recursion_check",
]
