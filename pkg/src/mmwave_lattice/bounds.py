"""Closed-form connectivity lower bounds and site-count formulas.

All bounds refer to the probability that the typical (origin) user has at
least one LoS base station in range.  Quantities carry stable string ids
(thm1, thm2, thm3, thm4, hetnet_*) used by the CLI's CSV output and by the
plotting component; the ids name the closed-form family, not the code path.

Numerical conventions:
* powers of probabilities are evaluated in log space (pow_prob) so that
  p̄^1000-scale telescoping terms underflow cleanly;
* 0^0 = 1, so the p_b -> 1 limit stays well defined;
* sums over the discrete radius grid run over {n : r_n < r_b} (strictly
  below the range).  The grid-aligned case r_b = r_m then contributes via
  the closed tail term, which keeps every bound continuous in r_b and keeps
  the bound valid at aligned parameters;
* results are clamped to [0, 1] only against float noise (1e-12); a larger
  excursion raises instead of being silently hidden.
"""

import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .lattice import ConfigError, LatticeConfig, MultiHeightConfig
from .numutil import ceil_plus, floor_plus, pow_prob

_CLAMP_EPS = 1e-12


class BoundError(ArithmeticError):
    """A closed-form evaluation left [0,1] by more than float noise."""


@dataclass(frozen=True)
class SingleTierScenario:
    lattice: LatticeConfig
    bs_density: float
    range_r_b: float

    def __post_init__(self):
        if self.bs_density < 0:
            raise ConfigError(f"bs_density must be >= 0, got {self.bs_density}")
        if self.range_r_b < 0:
            raise ConfigError(f"range_r_b must be >= 0, got {self.range_r_b}")


class TierParams(NamedTuple):
    density: float
    range_r: float


@dataclass(frozen=True)
class HetNetScenario:
    """K coexisting BS tiers over one multi-height lattice.

    Tier k is blocked by height classes 1..k.  The intended regime is
    decreasing ranges and increasing densities with k; violations only warn
    (the formulas stay valid).
    """

    lattice: MultiHeightConfig
    tiers: tuple

    def __post_init__(self):
        tiers = tuple(TierParams(float(d), float(r)) for (d, r) in self.tiers)
        object.__setattr__(self, "tiers", tiers)
        if len(tiers) != self.lattice.n_heights:
            raise ConfigError(
                f"{len(tiers)} tiers but {self.lattice.n_heights} height classes")
        if any(t.density < 0 or t.range_r <= 0 for t in tiers):
            raise ConfigError("tier densities must be >= 0 and ranges > 0")
        ranges = [t.range_r for t in tiers]
        densities = [t.density for t in tiers]
        if any(ranges[i] <= ranges[i + 1] for i in range(len(tiers) - 1)):
            warnings.warn("tier ranges are not strictly decreasing", stacklevel=2)
        if any(densities[i] >= densities[i + 1] for i in range(len(tiers) - 1)):
            warnings.warn("tier densities are not strictly increasing", stacklevel=2)

    @property
    def n_tiers(self) -> int:
        return len(self.tiers)


@dataclass(frozen=True)
class BoundResult:
    value: float
    theorem_id: str
    term_breakdown: Optional[tuple] = None
    info: Optional[dict] = None

    def __float__(self):
        return self.value


def _finalize(value: float, theorem_id: str, terms=None, info=None) -> BoundResult:
    if value < 0.0:
        if value < -_CLAMP_EPS:
            raise BoundError(f"{theorem_id} evaluated to {value}, below 0")
        value = 0.0
    elif value > 1.0:
        if value > 1.0 + _CLAMP_EPS:
            raise BoundError(f"{theorem_id} evaluated to {value}, above 1")
        value = 1.0
    return BoundResult(value, theorem_id, terms, info)


# --- site-count bounds ---------------------------------------------------------

def n_bounds(r: float, site_area_s: float):
    """Closed-form sandwich (N_minus, N_plus) for the number of sites the disk
    B(r) overlaps, for a user at a site center."""
    rho = r / math.sqrt(site_area_s)
    n_minus = (2 * ceil_plus(rho / math.sqrt(2.0) - 0.5) + 1) ** 2
    n_plus = (2 * ceil_plus(rho - 0.5) + 1) ** 2
    return n_minus, n_plus


def n_asymptotic(r: float, site_area_s: float) -> float:
    """Leading-order site count pi r^2 / s (error O(r/√s))."""
    return math.pi * r * r / site_area_s


def n_bounds_random_user(r: float, site_area_s: float):
    """Site-count sandwich for a user placed anywhere in its (empty) site:
    the effective radius grows by up to √s/2 in each direction."""
    rho = r / math.sqrt(site_area_s)
    n_minus = (2 * ceil_plus(rho / math.sqrt(2.0) - 1.0) + 1) ** 2
    n_plus = (2 * ceil_plus(rho) + 1) ** 2
    return n_minus, n_plus


# --- discrete free-disk radius distribution ------------------------------------

def mbfc_tail(n: int, p_b: float) -> float:
    """Pr(R >= r_n): all (2n+1)² - 1 non-origin sites of the covering block empty."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return pow_prob(1.0 - p_b, (2 * n + 1) ** 2 - 1)


def mbfc_pmf(n: int, p_b: float) -> float:
    """Pr(R = r_n) for the covering-block free-disk radius."""
    return mbfc_tail(n, p_b) - mbfc_tail(n + 1, p_b)


# --- single-tier bounds ---------------------------------------------------------

def _void(lam: float, r: float) -> float:
    """Pr(PPP(lam) has a point in B(r)) = 1 - exp(-pi lam r^2)."""
    return -math.expm1(-math.pi * lam * r * r)


def _n_terms_below(rho: float) -> int:
    """|{n : n + 1/2 < rho}| — number of radius-grid atoms strictly inside."""
    return ceil_plus(rho - 0.5)


def _lb_mbfc_value(lam_c: float, r_b: float, s: float, p_b: float):
    """Shared core of the free-disk lower bound: first (tail) term uses the
    closed-form block count; the sum adds the atoms with r_n < r_b."""
    pbar = 1.0 - p_b
    rho = r_b / math.sqrt(s)
    m = _n_terms_below(rho)
    first = _void(lam_c, r_b) * pow_prob(pbar, (2 * m + 1) ** 2 - 1)
    terms = [first]
    for n in range(m):
        terms.append(_void(lam_c, math.sqrt(s) * (n + 0.5)) * mbfc_pmf(n, p_b))
    return math.fsum(terms), tuple(terms)


def pc_lb_mbfc(sc: SingleTierScenario) -> BoundResult:
    """Free-disk (single-region) connectivity lower bound."""
    value, terms = _lb_mbfc_value(sc.bs_density, sc.range_r_b,
                                  sc.lattice.site_area_s, sc.lattice.occupancy_p_b)
    return _finalize(value, "thm1", terms)


def pc_mbfc_semi_analytic(sc: SingleTierScenario) -> BoundResult:
    """Exact expectation E[1 - exp(-pi λ_c min(R, r_b)²)] over the discrete
    radius distribution — the precise value of the event the free-disk
    simulator estimates.  With the covering-block radius semantics this
    coincides with pc_lb_mbfc (the tail-term weakening is vacuous there);
    it is kept as an independently-summed oracle."""
    lam_c = sc.bs_density
    s = sc.lattice.site_area_s
    p_b = sc.lattice.occupancy_p_b
    rho = sc.range_r_b / math.sqrt(s)
    m = _n_terms_below(rho)
    terms = [_void(lam_c, sc.range_r_b) * mbfc_tail(m, p_b)]
    for n in range(m):
        terms.append(_void(lam_c, math.sqrt(s) * (n + 0.5)) * mbfc_pmf(n, p_b))
    return _finalize(math.fsum(terms), "thm1_semi", tuple(terms))


def pc_lb_mbfc_dense(sc: SingleTierScenario, small_pb_approx: bool = False) -> BoundResult:
    """Dense-lattice closed form of the free-disk bound (site area -> 0 with
    blockage intensity held through λ_s ln(1/p̄)).  small_pb_approx replaces
    ln(1/(1-p_b)) by p_b."""
    p_b = sc.lattice.occupancy_p_b
    if p_b >= 1.0:
        raise ConfigError("dense form diverges at p_b = 1")
    lam_s = 1.0 / sc.lattice.site_area_s
    lam_c = sc.bs_density
    big_l = lam_s * (p_b if small_pb_approx else math.log1p(p_b / (1.0 - p_b)))
    if lam_c + big_l == 0.0:
        return _finalize(0.0, "thm2")
    t1 = lam_c / (lam_c + big_l) * -math.expm1(-math.pi * sc.range_r_b ** 2 * (lam_c + big_l))
    t2 = big_l / (big_l + lam_c) * -math.expm1(-math.pi * lam_c / lam_s)
    tid = "thm2_small_pb" if small_pb_approx else "thm2"
    return _finalize(t1 + t2, tid, (t1, t2))


# --- eight-region bounds ---------------------------------------------------------

def region_q_axis(sc: SingleTierScenario) -> float:
    """Lower bound for 'a LoS BS lies in one axis strip within range'."""
    lam_c = sc.bs_density
    s = sc.lattice.site_area_s
    p_b = sc.lattice.occupancy_p_b
    pbar = 1.0 - p_b
    rho = sc.range_r_b / math.sqrt(s)
    m_area = floor_plus(rho - 0.5)
    m_exp = ceil_plus(rho - 0.5)
    total = -math.expm1(-s * lam_c * m_area) * pow_prob(pbar, m_exp)
    for ell in range(_n_terms_below(rho)):
        total += p_b * -math.expm1(-s * lam_c * ell) * pow_prob(pbar, ell)
    return total


def region_q_quadrant(sc: SingleTierScenario) -> float:
    """Lower bound for 'a LoS BS lies in one quadrant block within range'."""
    lam_c = sc.bs_density
    s = sc.lattice.site_area_s
    p_b = sc.lattice.occupancy_p_b
    pbar = 1.0 - p_b
    rho = sc.range_r_b / math.sqrt(s)
    m_area = floor_plus(rho - 0.5)
    m_exp = ceil_plus(rho - 0.5)
    total = (-math.expm1(-0.25 * math.pi * s * lam_c * m_area ** 2)
             * pow_prob(pbar, m_exp ** 2))
    for ell in range(_n_terms_below(rho)):
        total += (-math.expm1(-0.25 * math.pi * s * lam_c * ell ** 2)
                  * pow_prob(pbar, ell ** 2)
                  * (1.0 - pow_prob(pbar, 2 * ell + 1)))
    return total


def pc_lb_multiregion(sc: SingleTierScenario) -> BoundResult:
    """Eight-region tightened bound: the strips and quadrants fail
    independently, so 1 - (1-q_axis)^4 (1-q_quadrant)^4."""
    qa = region_q_axis(sc)
    qq = region_q_quadrant(sc)
    value = 1.0 - (1.0 - qa) ** 4 * (1.0 - qq) ** 4
    return _finalize(value, "thm3", info={"q_axis": qa, "q_quadrant": qq})


def pc_lb_multiregion_dense(sc: SingleTierScenario) -> BoundResult:
    """Dense-lattice analogue of the eight-region bound: one quarter-plane
    term p̃, combined as 1 - (1 - p̃)^4."""
    p_b = sc.lattice.occupancy_p_b
    if p_b >= 1.0:
        raise ConfigError("dense form diverges at p_b = 1")
    lam_s = 1.0 / sc.lattice.site_area_s
    lam_c = sc.bs_density
    big_l = lam_s * math.log1p(p_b / (1.0 - p_b))
    if lam_c + big_l == 0.0:
        return _finalize(0.0, "thm4")
    t1 = (4.0 * lam_c / (4.0 * lam_c + big_l)
          * -math.expm1(-0.25 * math.pi * sc.range_r_b ** 2 * (lam_c + big_l)))
    t2 = (big_l / (big_l + 4.0 * lam_c)
          * -math.expm1(-0.25 * math.pi * lam_c / lam_s))
    p_tilde = t1 + t2
    value = 1.0 - (1.0 - p_tilde) ** 4
    return _finalize(value, "thm4", (t1, t2), info={"p_tilde": p_tilde})


# --- HetNet bounds ----------------------------------------------------------------

def qk(heights: MultiHeightConfig, k: int) -> float:
    """Product form ∏_{ℓ<=k}(1 - p^(ℓ)) of the per-site void probability seen
    by tier k.  Note the marks are exclusive, so the exact void probability is
    1 - Σ_{ℓ<=k} p^(ℓ) (see qk_exact); the product form used by the closed
    forms slightly exceeds it whenever two tier probabilities are positive."""
    if not 1 <= k <= heights.n_heights:
        raise ConfigError(f"tier index {k} out of range 1..{heights.n_heights}")
    prod = 1.0
    for ell in range(1, k + 1):
        prod *= 1.0 - heights.height_probs[ell]
    return prod


def qk_exact(heights: MultiHeightConfig, k: int) -> float:
    """Exact exclusive-mark void probability 1 - Σ_{ℓ<=k} p^(ℓ)."""
    if not 1 <= k <= heights.n_heights:
        raise ConfigError(f"tier index {k} out of range 1..{heights.n_heights}")
    return 1.0 - math.fsum(heights.height_probs[1:k + 1])


def _tier_single_scenario(sc: HetNetScenario, k: int) -> SingleTierScenario:
    """Tier k viewed as a single-tier problem with effective occupancy 1 - q_k."""
    tier = sc.tiers[k - 1]
    eff = LatticeConfig(sc.lattice.site_area_s, 1.0 - qk(sc.lattice, k))
    return SingleTierScenario(eff, tier.density, tier.range_r)


def tier_eta(sc: HetNetScenario, k: int) -> BoundResult:
    """Per-tier free-disk bound with the tier's density/range and effective
    blockage 1 - q_k."""
    res = pc_lb_mbfc(_tier_single_scenario(sc, k))
    return BoundResult(res.value, f"tier_eta_{k}", res.term_breakdown)


def tier_eta_dense(sc: HetNetScenario, k: int) -> BoundResult:
    res = pc_lb_mbfc_dense(_tier_single_scenario(sc, k))
    return BoundResult(res.value, f"tier_eta_dense_{k}", res.term_breakdown)


def hetnet_lb_max(sc: HetNetScenario, dense: bool = False) -> BoundResult:
    """Best single tier: max_k of the per-tier bounds."""
    f = tier_eta_dense if dense else tier_eta
    vals = [f(sc, k).value for k in range(1, sc.n_tiers + 1)]
    best = max(range(len(vals)), key=vals.__getitem__)
    tid = "hetnet_max_dense" if dense else "hetnet_max"
    return _finalize(vals[best], tid, tuple(vals), info={"argmax_tier": best + 1})


def hetnet_eta_region(sc: HetNetScenario, k: int, region_kind: str) -> float:
    """Per-tier analogue of the axis/quadrant region bounds."""
    single = _tier_single_scenario(sc, k)
    if region_kind == "axis":
        return region_q_axis(single)
    if region_kind == "quadrant":
        return region_q_quadrant(single)
    raise ConfigError(f"region_kind must be 'axis' or 'quadrant', got {region_kind!r}")


def _tier_multiregion_value(sc: HetNetScenario, k: int) -> float:
    qa = hetnet_eta_region(sc, k, "axis")
    qq = hetnet_eta_region(sc, k, "quadrant")
    return 1.0 - (1.0 - qa) ** 4 * (1.0 - qq) ** 4


def hetnet_lb_multiregion(sc: HetNetScenario) -> BoundResult:
    """Best single tier under the eight-region tightening."""
    vals = [_tier_multiregion_value(sc, k) for k in range(1, sc.n_tiers + 1)]
    best = max(range(len(vals)), key=vals.__getitem__)
    return _finalize(vals[best], "hetnet_multiregion", tuple(vals),
                     info={"argmax_tier": best + 1})


def hetnet_lb_independent(sc: HetNetScenario, tightened: bool = False) -> BoundResult:
    """Cross-tier combination 1 - ∏_k (1 - η_k), treating tiers as if
    independent (the shared lattice actually correlates them, in the
    favorable direction).  tightened=True uses the per-tier eight-region
    values instead of the free-disk ones.  info carries the first-order
    approximation Σ_k η_k."""
    etas = [(_tier_multiregion_value(sc, k) if tightened else tier_eta(sc, k).value)
            for k in range(1, sc.n_tiers + 1)]
    prod = 1.0
    for e in etas:
        prod *= 1.0 - e
    tid = "hetnet_independent_tight" if tightened else "hetnet_independent"
    return _finalize(1.0 - prod, tid, tuple(etas),
                     info={"linear_sum": math.fsum(etas)})


def hetnet_linear_sum(sc: HetNetScenario) -> float:
    """First-order (small per-tier probability) approximation Σ_k η_k."""
    return math.fsum(tier_eta(sc, k).value for k in range(1, sc.n_tiers + 1))
