"""Exact derivative, Whittaker and wavefront combinatorics for KP and Savin covers of GL_r."""

from .covers import CoverSpec, Family, d_r, mtp_multiplicities, n_alpha
from .derivatives import (
    DerivativeResult,
    FormalSum,
    c_m,
    derivative_L,
    derivative_Z,
    highest_derivative,
    is_generic,
    lambda_of,
    semi_whittaker_nonzero,
    top_derivative_degree_of_product,
    wh_dim_L,
    wh_dim_product,
    wh_dim_Z,
)
from .dsl import Session, dump, parse
from .errors import CovsegError, HypothesisError, IntegrityError, InvariantError
from .langlands import ParameterOrbit, bv_consistency, min_generic_level, parameter_orbit, wavefront
from .partitions import (
    Composition,
    Partition,
    bv_dual,
    dominance_leq,
    height,
    partition_sum,
    s_col,
    transpose,
    width,
)
from .segments import (
    CuspidalDatum,
    Multisegment,
    Segment,
    homogeneity_hypothesis,
    k_m,
    linked,
    multisegment_minus,
    normal_order,
    precedes,
    segment_minus,
)

__version__ = "0.1.0"
