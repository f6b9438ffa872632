"""Converse bounds from Fano's inequality, certified against exact oracles."""

__version__ = "0.1.0"

from .fano import (
    ConditionalFanoEntry,
    RecoveryCriterion,
    VolumeRatio,
    approx_fano_entropy_rhs,
    approx_fano_pe_lower,
    conditional_fano_pe_lower,
    continuum_fano_pe_lower,
    fano_entropy_rhs,
    fano_pe_lower,
    fano_pe_lower_binary,
    neighborhood_counts,
)
from .measures import (
    ChannelMatrix,
    FinitePMF,
    GaussianScalar,
    JointPMF,
    ValidationError,
    binary_entropy,
    binary_kl,
    chi_sq,
    conditional_mutual_information,
    entropy,
    gaussian_kl,
    hellinger_sq,
    inv_binary_entropy,
    kl_divergence,
    mutual_information,
    tv_distance,
)
from .report import BoundReport
