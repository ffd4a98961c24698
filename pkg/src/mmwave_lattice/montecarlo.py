"""Seeded Monte Carlo estimation of connectivity events.

Estimator kinds (single-tier): exact_single (a LoS BS in range), mbfc_single
(a BS inside the blockage-free disk, radius min(R, r_b)), multiregion_single
(a LoS BS in range inside the origin site or inside its region's free disk).
The three are evaluated on the same draws, so containment
mbfc => multiregion => exact holds per trial by construction.

HetNet kinds: per-tier events of each type plus their unions across tiers
(exact_hetnet, mbfc_hetnet, multiregion_hetnet).  The lattice is shared
across tiers within a trial (heights are correlated blockage); the tier PPPs
are independent.

Every trial i draws from a substream derived from (master_seed, i), so
estimates are bit-reproducible regardless of chunking or worker count; the
reduction is per-trial indexed, hence order-independent.  MMWAVE_THREADS
caps worker threads (0 or unset = auto).
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from statistics import NormalDist

import numpy as np

from . import kernels
from .bounds import HetNetScenario, SingleTierScenario
from .lattice import (ConfigError, RngStream, Window, draw_height_marks,
                      draw_ppp_points, draw_uniform_marks)
from .numutil import ceil_plus, snap_floor

SINGLE_KINDS = ("exact_single", "mbfc_single", "multiregion_single")
HETNET_KINDS = ("exact_hetnet", "mbfc_hetnet", "multiregion_hetnet", "per_tier")
PLACEMENTS = ("origin", "uniform_in_empty_site")

_CHUNK = 1024  # trials per work unit; fixed so results never depend on workers


@dataclass(frozen=True)
class EstimatorKind:
    kind: str
    user_placement: str = "origin"

    def __post_init__(self):
        if self.kind not in SINGLE_KINDS + HETNET_KINDS + ("r_pmf",):
            raise ConfigError(f"unknown estimator kind {self.kind!r}")
        if self.user_placement not in PLACEMENTS:
            raise ConfigError(f"unknown user placement {self.user_placement!r}")


@dataclass(frozen=True)
class Estimate:
    p_hat: float
    trials: int
    successes: int
    ci_low: float
    ci_high: float
    master_seed: int
    estimator_id: str


def wilson_ci(successes: int, trials: int, level: float = 0.95):
    """Wilson score interval; robust near 0 and 1."""
    if trials < 1 or not 0 <= successes <= trials:
        raise ValueError("need 0 <= successes <= trials, trials >= 1")
    z = NormalDist().inv_cdf(0.5 + level / 2.0)
    phat = successes / trials
    denom = 1.0 + z * z / trials
    center = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    lo = max(center - half, 0.0)
    hi = min(center + half, 1.0)
    # the score endpoints at 0/n successes are exactly 0/1; center-half
    # cancellation otherwise leaves ~1e-19 dust there
    if successes == 0:
        lo = 0.0
    if successes == trials:
        hi = 1.0
    return lo, hi


def _n_workers() -> int:
    raw = os.environ.get("MMWAVE_THREADS", "0").strip() or "0"
    try:
        w = int(raw)
    except ValueError:
        raise ConfigError(f"MMWAVE_THREADS must be an integer, got {raw!r}")
    if w <= 0:
        w = min(8, os.cpu_count() or 1)
    return w


def _window_geometry(side_m: float, max_range: float):
    """(window, H, rho list precursor): half_width = range + √s per contract."""
    hw = max_range + side_m
    window = Window(hw)
    h = snap_floor(hw / side_m + 0.5)
    return window, h


def _single_trial_eval(gen, scenario: SingleTierScenario, h: int, hw_units: float,
                       rho_b: float, cap_n: int, uniform_user: bool):
    occ = draw_uniform_marks(gen, h, scenario.lattice.occupancy_p_b)
    pts = draw_ppp_points(gen, scenario.bs_density * scenario.lattice.site_area_s,
                          hw_units)
    ux = uy = 0.0
    if uniform_user:
        off = gen.random(2)
        ux, uy = off[0] - 0.5, off[1] - 0.5
    return kernels.eval_single(occ, h, pts[:, 0].copy(), pts[:, 1].copy(),
                               rho_b, cap_n, ux, uy, not uniform_user)


def _hetnet_trial_eval(gen, scenario: HetNetScenario, h: int, hw_units: float,
                       rhos, caps, uniform_user: bool):
    marks = draw_height_marks(gen, h, scenario.lattice.height_probs)
    s = scenario.lattice.site_area_s
    xs, ys = [], []
    offsets = np.zeros(len(scenario.tiers) + 1, dtype=np.int64)
    for k, tier in enumerate(scenario.tiers, start=1):
        pts = draw_ppp_points(gen, tier.density * s, hw_units)
        xs.append(pts[:, 0].copy())
        ys.append(pts[:, 1].copy())
        offsets[k] = offsets[k - 1] + len(pts)
    ux = uy = 0.0
    if uniform_user:
        off = gen.random(2)
        ux, uy = off[0] - 0.5, off[1] - 0.5
    px = np.concatenate(xs) if xs else np.empty(0)
    py = np.concatenate(ys) if ys else np.empty(0)
    return kernels.eval_hetnet(marks, h, px, py, offsets, rhos, caps, ux, uy,
                               not uniform_user)


def _run_chunks(trials, worker):
    """Run worker(lo, hi) over fixed-size chunks, possibly threaded.

    Workers write into per-trial slots, so the schedule cannot affect results.
    """
    n_workers = _n_workers()
    chunks = [(lo, min(lo + _CHUNK, trials)) for lo in range(0, trials, _CHUNK)]
    if n_workers == 1 or len(chunks) == 1:
        for lo, hi in chunks:
            worker(lo, hi)
    else:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            list(pool.map(lambda c: worker(*c), chunks))


class _SingleBatch:
    """Per-trial event table for a single-tier scenario (shared draws)."""

    def __init__(self, scenario: SingleTierScenario, trials: int, master_seed: int,
                 placement: str = "origin"):
        if trials < 1:
            raise ConfigError("trials must be >= 1")
        s = scenario.lattice.site_area_s
        side = scenario.lattice.side
        window, h = _window_geometry(side, scenario.range_r_b)
        rho_b = scenario.range_r_b / side
        cap_n = ceil_plus(rho_b - 0.5)
        if cap_n > h - 1:
            raise ConfigError("window too small for the free-disk cap")
        uniform_user = placement == "uniform_in_empty_site"
        stream = RngStream(master_seed)
        # columns: ridx, mbfc, multi, exact
        self.ridx = np.empty(trials, dtype=np.int64)
        self.events = np.zeros((trials, 3), dtype=bool)
        hw_units = window.half_width / side

        def worker(lo, hi):
            for i in range(lo, hi):
                gen = stream.substream(i)
                ridx, mbfc, multi, exact = _single_trial_eval(
                    gen, scenario, h, hw_units, rho_b, cap_n, uniform_user)
                self.ridx[i] = ridx
                self.events[i, 0] = mbfc
                self.events[i, 1] = multi
                self.events[i, 2] = exact

        _run_chunks(trials, worker)
        self.trials = trials
        self.master_seed = master_seed
        self.placement = placement

    def successes(self, kind: str) -> int:
        col = {"mbfc_single": 0, "multiregion_single": 1, "exact_single": 2}[kind]
        return int(self.events[:, col].sum())

    def containment_violations(self):
        """(mbfc > multiregion, multiregion > exact) counts over paired draws."""
        mbfc, multi, exact = (self.events[:, 0], self.events[:, 1], self.events[:, 2])
        return int((mbfc & ~multi).sum()), int((multi & ~exact).sum())


class _HetNetBatch:
    """Per-trial, per-tier event table for a hetnet scenario (shared draws)."""

    def __init__(self, scenario: HetNetScenario, trials: int, master_seed: int,
                 placement: str = "origin"):
        if trials < 1:
            raise ConfigError("trials must be >= 1")
        side = scenario.lattice.side
        max_r = max(t.range_r for t in scenario.tiers)
        window, h = _window_geometry(side, max_r)
        rhos = np.array([t.range_r / side for t in scenario.tiers])
        caps = np.array([ceil_plus(r - 0.5) for r in rhos], dtype=np.int64)
        if caps.max() > h - 1:
            raise ConfigError("window too small for the free-disk cap")
        uniform_user = placement == "uniform_in_empty_site"
        stream = RngStream(master_seed)
        k = scenario.n_tiers
        # per tier: exact, mbfc, multi
        self.tier_events = np.zeros((trials, k, 3), dtype=bool)
        hw_units = window.half_width / side

        def worker(lo, hi):
            for i in range(lo, hi):
                gen = stream.substream(i)
                out = _hetnet_trial_eval(gen, scenario, h, hw_units, rhos, caps,
                                         uniform_user)
                self.tier_events[i] = out.astype(bool)

        _run_chunks(trials, worker)
        self.trials = trials
        self.master_seed = master_seed
        self.placement = placement

    def successes(self, kind: str, tier: int = 0) -> int:
        if kind == "per_tier":
            return int(self.tier_events[:, tier - 1, 0].sum())
        col = {"exact_hetnet": 0, "mbfc_hetnet": 1, "multiregion_hetnet": 2}[kind]
        return int(self.tier_events[:, :, col].any(axis=1).sum())


def _estimator_id(kind, placement, tier=0):
    eid = kind if kind != "per_tier" else f"per_tier_{tier}"
    if placement != "origin":
        eid += "@uniform_user"
    return eid


def _resolve_kind(kind, placement):
    """An EstimatorKind instance carries its own placement; bare-string kinds
    use the placement argument."""
    if isinstance(kind, EstimatorKind):
        return kind.kind, kind.user_placement
    return kind, placement


def run_trial(kind, scenario, gen, placement: str = "origin", tier: int = 0) -> bool:
    """One success/failure draw of the given event kind from one substream."""
    kind, placement = _resolve_kind(kind, placement)
    if kind in SINGLE_KINDS:
        if not isinstance(scenario, SingleTierScenario):
            raise ConfigError(f"{kind} needs a SingleTierScenario")
        side = scenario.lattice.side
        window, h = _window_geometry(side, scenario.range_r_b)
        rho_b = scenario.range_r_b / side
        cap_n = ceil_plus(rho_b - 0.5)
        _, mbfc, multi, exact = _single_trial_eval(
            gen, scenario, h, window.half_width / side, rho_b, cap_n,
            placement == "uniform_in_empty_site")
        return {"mbfc_single": mbfc, "multiregion_single": multi,
                "exact_single": exact}[kind]
    if kind in HETNET_KINDS:
        if not isinstance(scenario, HetNetScenario):
            raise ConfigError(f"{kind} needs a HetNetScenario")
        side = scenario.lattice.side
        max_r = max(t.range_r for t in scenario.tiers)
        window, h = _window_geometry(side, max_r)
        rhos = np.array([t.range_r / side for t in scenario.tiers])
        caps = np.array([ceil_plus(r - 0.5) for r in rhos], dtype=np.int64)
        out = _hetnet_trial_eval(gen, scenario, h, window.half_width / side,
                                 rhos, caps, placement == "uniform_in_empty_site")
        if kind == "per_tier":
            if not 1 <= tier <= scenario.n_tiers:
                raise ConfigError(f"tier {tier} out of range")
            return bool(out[tier - 1, 0])
        col = {"exact_hetnet": 0, "mbfc_hetnet": 1, "multiregion_hetnet": 2}[kind]
        return bool(out[:, col].any())
    raise ConfigError(f"run_trial cannot evaluate kind {kind!r} "
                      "(use estimate_pmf for the radius distribution)")


def estimate(kind, scenario, trials: int, master_seed: int,
             placement: str = "origin", tier: int = 0) -> Estimate:
    """Monte Carlo estimate of one event kind with a 95% Wilson CI."""
    kind, placement = _resolve_kind(kind, placement)
    if kind in SINGLE_KINDS:
        if not isinstance(scenario, SingleTierScenario):
            raise ConfigError(f"{kind} needs a SingleTierScenario")
        batch = _SingleBatch(scenario, trials, master_seed, placement)
        succ = batch.successes(kind)
    elif kind in HETNET_KINDS:
        if not isinstance(scenario, HetNetScenario):
            raise ConfigError(f"{kind} needs a HetNetScenario")
        if kind == "per_tier" and not 1 <= tier <= scenario.n_tiers:
            raise ConfigError(f"tier {tier} out of range")
        batch = _HetNetBatch(scenario, trials, master_seed, placement)
        succ = batch.successes(kind, tier)
    else:
        raise ConfigError(f"estimate cannot evaluate kind {kind!r} "
                          "(use estimate_pmf for the radius distribution)")
    lo, hi = wilson_ci(succ, trials)
    return Estimate(succ / trials, trials, succ, lo, hi, master_seed,
                    _estimator_id(kind, placement, tier))


def estimate_events(scenario, trials: int, master_seed: int,
                    placement: str = "origin"):
    """All event kinds on shared draws.

    Single-tier: dict of Estimates for the three kinds plus
    'containment_violations' (must be (0, 0) — mbfc => multiregion => exact).
    HetNet: Estimates for the three unions and each per_tier_k.
    """
    if isinstance(scenario, SingleTierScenario):
        batch = _SingleBatch(scenario, trials, master_seed, placement)
        out = {}
        for kind in SINGLE_KINDS:
            succ = batch.successes(kind)
            lo, hi = wilson_ci(succ, trials)
            out[kind] = Estimate(succ / trials, trials, succ, lo, hi, master_seed,
                                 _estimator_id(kind, placement))
        out["containment_violations"] = batch.containment_violations()
        return out
    if isinstance(scenario, HetNetScenario):
        batch = _HetNetBatch(scenario, trials, master_seed, placement)
        out = {}
        for kind in ("exact_hetnet", "mbfc_hetnet", "multiregion_hetnet"):
            succ = batch.successes(kind)
            lo, hi = wilson_ci(succ, trials)
            out[kind] = Estimate(succ / trials, trials, succ, lo, hi, master_seed,
                                 _estimator_id(kind, placement))
        for k in range(1, scenario.n_tiers + 1):
            succ = batch.successes("per_tier", k)
            lo, hi = wilson_ci(succ, trials)
            out[f"per_tier_{k}"] = Estimate(succ / trials, trials, succ, lo, hi,
                                            master_seed,
                                            _estimator_id("per_tier", placement, k))
        return out
    raise ConfigError("estimate_events needs a SingleTierScenario or HetNetScenario")


def estimate_pmf(scenario: SingleTierScenario, n_max: int, trials: int,
                 master_seed: int):
    """Empirical distribution of the free-disk radius index.

    Buckets 0..n_max-1 are the exact atoms; bucket n_max is the >= n_max tail.
    Bucket p_hats are the empirical frequencies apportioned onto a common
    2^-53 grid (largest-remainder rounding of counts/trials), so each is
    within 2^-53 of successes/trials and math.fsum of the buckets is 1.0
    exactly -- plain counts/trials can miss 1.0 by an ulp for some splits.
    Only the lattice part of the scenario is used (no BS draws).
    """
    if not isinstance(scenario, SingleTierScenario):
        raise ConfigError("estimate_pmf needs a SingleTierScenario")
    if n_max < 1:
        raise ConfigError("n_max must be >= 1")
    if trials < 1:
        raise ConfigError("trials must be >= 1")
    side = scenario.lattice.side
    h = n_max + 2  # window sized for the cap, independent of r_b
    stream = RngStream(master_seed)
    ridx = np.empty(trials, dtype=np.int64)
    empty = np.empty(0)

    def worker(lo, hi):
        for i in range(lo, hi):
            gen = stream.substream(i)
            occ = draw_uniform_marks(gen, h, scenario.lattice.occupancy_p_b)
            r, _, _, _ = kernels.eval_single(occ, h, empty, empty, 0.0, n_max,
                                             0.0, 0.0, True)
            ridx[i] = r

    _run_chunks(trials, worker)
    counts = np.bincount(ridx, minlength=n_max + 1)
    p_hats = _unit_apportion([int(c) for c in counts], trials)
    out = []
    for n in range(n_max + 1):
        succ = int(counts[n])
        lo_ci, hi_ci = wilson_ci(succ, trials)
        eid = f"r_pmf_{n}" if n < n_max else f"r_pmf_tail_{n_max}"
        out.append(Estimate(p_hats[n], trials, succ, lo_ci, hi_ci,
                            master_seed, eid))
    return out


def _unit_apportion(counts, total):
    """counts/total as dyadic floats that sum to exactly 1.0.

    Integer largest-remainder apportionment of 2^53 over the buckets; each
    quotient n/2^53 is exact in double precision, and the real sum is exactly
    one, so the float sum is too.
    """
    scale = 1 << 53
    nums = [(c * scale) // total for c in counts]
    rems = [(c * scale) % total for c in counts]
    deficit = scale - sum(nums)
    for i in sorted(range(len(counts)), key=lambda j: (-rems[j], j))[:deficit]:
        nums[i] += 1
    return [n / scale for n in nums]
