"""Achievable rate regions for one-way and two-way relay channels.

Evaluates compress-forward with and without Wyner-Ziv binning and noisy
network coding, over an exact linear-Gaussian mutual-information engine or
a finite-pmf backend, and traces the resulting Pareto rate regions.
"""

from .channels import (
    CompressionNoise,
    DmOneWay,
    DmTwrc,
    GaussianTwrcConfig,
    dm_joint,
    dm_model_from_dict,
    gaussian_variables,
)
from .dm import DmJoint, dm_cmi, entropy_bits
from .gaussians import GaussianVarSet, LinearVariable, SourceBasis, cmi, covariance
from .regions import (
    Frontier,
    RatePoint,
    SigmaGridSpec,
    SweepResult,
    contains,
    max_sum_rate,
    region_equal,
    region_from_sweep,
    sweep_distance,
    sweep_power,
    sweep_sigma,
)
from .schemes import (
    SCHEMES,
    DmMi,
    GaussianBounds,
    GaussianMi,
    SchemePoint,
    SigmaThresholds,
    binning_equality_holds,
    capacity,
    gaussian_closed_forms,
    gaussian_mi,
    nnc_equivalence_holds,
    oneway_cf_binning,
    oneway_cf_nobin,
    thresholds,
    twrc_rates,
)

__version__ = "0.1.0"

__all__ = [
    "CompressionNoise",
    "DmJoint",
    "DmMi",
    "DmOneWay",
    "DmTwrc",
    "Frontier",
    "GaussianBounds",
    "GaussianMi",
    "GaussianTwrcConfig",
    "GaussianVarSet",
    "LinearVariable",
    "RatePoint",
    "SCHEMES",
    "SchemePoint",
    "SigmaGridSpec",
    "SigmaThresholds",
    "SourceBasis",
    "SweepResult",
    "binning_equality_holds",
    "capacity",
    "cmi",
    "contains",
    "covariance",
    "dm_cmi",
    "dm_joint",
    "dm_model_from_dict",
    "entropy_bits",
    "gaussian_closed_forms",
    "gaussian_mi",
    "gaussian_variables",
    "max_sum_rate",
    "nnc_equivalence_holds",
    "oneway_cf_binning",
    "oneway_cf_nobin",
    "region_equal",
    "region_from_sweep",
    "sweep_distance",
    "sweep_power",
    "sweep_sigma",
    "thresholds",
    "twrc_rates",
]
