"""Connectivity of mmWave networks over a random square-lattice blockage field.

Analytic lower bounds on the probability that a typical outdoor user has an
unblocked base station in range, plus a seeded Monte Carlo simulator of the
same events for cross-validation, and a small CLI that sweeps parameters and
writes tidy CSV.
"""

from .bounds import (BoundError, BoundResult, HetNetScenario,
                     SingleTierScenario, TierParams, hetnet_eta_region,
                     hetnet_lb_independent, hetnet_lb_max,
                     hetnet_lb_multiregion, hetnet_linear_sum, mbfc_pmf,
                     mbfc_tail, n_asymptotic, n_bounds, n_bounds_random_user,
                     pc_lb_mbfc, pc_lb_mbfc_dense, pc_lb_multiregion,
                     pc_lb_multiregion_dense, pc_mbfc_semi_analytic, qk,
                     qk_exact, region_q_axis, region_q_quadrant, tier_eta,
                     tier_eta_dense)
from .geometry import (exact_covered_site_count, has_los_bs,
                       mbfc_radius_index, region_mbfc_radius_index,
                       region_of_site, segment_blocked, site_of_point)
from .kernels import BACKEND, get_backend
from .lattice import (ConfigError, LatticeConfig, LatticeRealization,
                      MultiHeightConfig, PointSet, RngStream, SiteIndex,
                      Window, blocking_sites_for_tier, sample_multiheight_lattice,
                      sample_ppp, sample_uniform_lattice)
from .montecarlo import (Estimate, EstimatorKind, estimate, estimate_events,
                         estimate_pmf, run_trial, wilson_ci)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BoundError",
    "BoundResult",
    "ConfigError",
    "Estimate",
    "EstimatorKind",
    "HetNetScenario",
    "LatticeConfig",
    "LatticeRealization",
    "MultiHeightConfig",
    "PointSet",
    "RngStream",
    "SingleTierScenario",
    "SiteIndex",
    "TierParams",
    "Window",
    "blocking_sites_for_tier",
    "estimate",
    "estimate_events",
    "estimate_pmf",
    "exact_covered_site_count",
    "get_backend",
    "has_los_bs",
    "hetnet_eta_region",
    "hetnet_lb_independent",
    "hetnet_lb_max",
    "hetnet_lb_multiregion",
    "hetnet_linear_sum",
    "mbfc_pmf",
    "mbfc_radius_index",
    "mbfc_tail",
    "n_asymptotic",
    "n_bounds",
    "n_bounds_random_user",
    "pc_lb_mbfc",
    "pc_lb_mbfc_dense",
    "pc_lb_multiregion",
    "pc_lb_multiregion_dense",
    "pc_mbfc_semi_analytic",
    "qk",
    "qk_exact",
    "region_mbfc_radius_index",
    "region_of_site",
    "region_q_axis",
    "region_q_quadrant",
    "run_trial",
    "sample_multiheight_lattice",
    "sample_ppp",
    "sample_uniform_lattice",
    "segment_blocked",
    "site_of_point",
    "tier_eta",
    "tier_eta_dense",
    "wilson_ci",
]
