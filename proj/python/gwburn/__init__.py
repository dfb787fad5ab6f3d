"""Conditioned Galton-Watson trees, burning numbers, and cover certificates."""

from ._gwburn import (
    CapExceededError,
    IncompatibleSizeError,
    InvalidParameterError,
    InvalidSequenceError,
    OffspringDistribution,
    RejectionLimitError,
    Tree,
    __version__,
    all_trees,
    bhat_exact,
    binomial,
    borel_pmf,
    burning_number_exact,
    estimate_height_tail,
    estimate_pair_ratio,
    geometric_half,
    known_bounds,
    llt_size_asymptote,
    llt_sum_asymptote,
    min_ball_cover,
    offspring_from_pmf,
    offspring_from_spec,
    pair_counts,
    pair_lower_bound,
    parse_degrees,
    poisson1,
    predicted_acceptance_rate,
    sample_conditioned,
    sample_unconditioned,
    scheme_cover,
    scheme_upper_bound,
    serialize_degrees,
    simulate_burning,
    to_lattice_path,
    two_point,
    unique_valid_rotation,
    validate_degree_sequence,
    verify_cover,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
