"""Exact and numerical checks for slice matrices, matchings and fibrations."""

from .fibration import (
    Path,
    Polynomial,
    determinant_polynomial,
    euler_identity_check,
    fibre_drift,
    horizontal_lift,
    lift_norm_bound,
    parallel_transport,
    sum_of_squares,
)
from .matchings import catalan, enumerate_matchings, horseshoe, is_noncrossing
from .sl2 import sl2_word_check, word_power
from .slice_matrix import (
    EigenConfiguration,
    GaussianRational,
    SliceMatrix,
    assemble,
    block_charpoly,
    charpoly,
    charpoly_identity_check,
    exact_rank,
    nilpotent_n_plus,
    random_slice,
    slice_point,
)

__all__ = [
    "EigenConfiguration", "GaussianRational", "Path", "Polynomial", "SliceMatrix",
    "assemble", "block_charpoly", "catalan", "charpoly", "charpoly_identity_check",
    "determinant_polynomial", "enumerate_matchings", "euler_identity_check", "exact_rank",
    "fibre_drift", "horizontal_lift", "horseshoe", "is_noncrossing", "lift_norm_bound",
    "nilpotent_n_plus", "parallel_transport", "random_slice", "sl2_word_check",
    "slice_point", "sum_of_squares", "word_power",
]
