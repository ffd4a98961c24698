"""Random-city sampling: square-lattice building occupancy and Poisson BS points.

The city is a square lattice of sites with area ``s`` each; site (a, b)
occupies the half-open square [(a-1/2)√s, (a+1/2)√s) x [(b-1/2)√s, (b+1/2)√s),
so the squares tile the plane with no double counting.  A site is either
empty (mark 0) or holds a building; in the multi-height model the mark is a
height class 1..K (1 = tallest).  The typical user sits at the origin, which
is conditioned to be outdoors: the origin site is forced empty in every
realization.

Base stations form a homogeneous Poisson point process, sampled inside a
finite window centered on the origin.

All randomness flows through per-trial substreams derived from
(master_seed, trial_index) with counter-based Philox generators, so results
are bit-reproducible under any parallel schedule.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .numutil import snap_floor


class ConfigError(ValueError):
    """Invalid scenario/experiment configuration."""


class SiteIndex(NamedTuple):
    a: int
    b: int


@dataclass(frozen=True)
class LatticeConfig:
    """Uniform-height blockage lattice: site area (m²) and occupancy probability."""

    site_area_s: float
    occupancy_p_b: float

    def __post_init__(self):
        if not self.site_area_s > 0:
            raise ConfigError(f"site_area_s must be > 0, got {self.site_area_s}")
        if not 0.0 <= self.occupancy_p_b <= 1.0:
            raise ConfigError(f"occupancy_p_b must be in [0,1], got {self.occupancy_p_b}")

    @property
    def side(self) -> float:
        return math.sqrt(self.site_area_s)


@dataclass(frozen=True)
class MultiHeightConfig:
    """K-height blockage lattice.

    height_probs = (p0, p1, ..., pK): p0 is the empty probability, pk the
    probability of height class k, ordered tallest first.  Marks are
    exclusive, so the probabilities must sum to 1.
    """

    site_area_s: float
    height_probs: tuple

    def __post_init__(self):
        if not self.site_area_s > 0:
            raise ConfigError(f"site_area_s must be > 0, got {self.site_area_s}")
        probs = tuple(float(p) for p in self.height_probs)
        object.__setattr__(self, "height_probs", probs)
        if len(probs) < 2:
            raise ConfigError("height_probs needs at least (p0, p1), i.e. K >= 1")
        if any(p < 0 or p > 1 for p in probs):
            raise ConfigError(f"height probabilities must be in [0,1]: {probs}")
        if abs(sum(probs) - 1.0) > 1e-12:
            raise ConfigError(f"height probabilities must sum to 1, got {sum(probs)}")

    @property
    def n_heights(self) -> int:
        return len(self.height_probs) - 1

    @property
    def side(self) -> float:
        return math.sqrt(self.site_area_s)


@dataclass(frozen=True)
class Window:
    """Square simulation window [-half_width, half_width]² centered on the origin.

    Contract (asserted by the simulator): for a scenario with range r the
    window must satisfy half_width >= r + √s, so every LoS segment and every
    capped free-disk query stays on materialized sites.
    """

    half_width: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise ConfigError(f"half_width must be > 0, got {self.half_width}")

    @property
    def area(self) -> float:
        return (2.0 * self.half_width) ** 2

    def site_half_extent(self, site_area_s: float) -> int:
        """Largest |index| of a site whose square intersects the window."""
        return snap_floor(self.half_width / math.sqrt(site_area_s) + 0.5)


@dataclass(frozen=True)
class RngStream:
    """Counter-based stream factory: trial i -> Philox generator keyed by (seed, i)."""

    master_seed: int

    def substream(self, trial_index: int) -> np.random.Generator:
        ss = np.random.SeedSequence(entropy=self.master_seed, spawn_key=(trial_index,))
        return np.random.Generator(np.random.Philox(ss))


@dataclass
class LatticeRealization:
    """Sampled occupancy marks for all sites intersecting a window.

    marks[a + H, b + H] is the mark of site (a, b); H = site_half_extent.
    Mark 0 = empty; uniform model uses {0, 1}; multi-height uses {0..K}.
    The origin entry is always 0.
    """

    config: object  # LatticeConfig or MultiHeightConfig
    window: Window
    half_extent: int
    marks: np.ndarray

    def mark(self, a: int, b: int) -> int:
        h = self.half_extent
        return int(self.marks[a + h, b + h])

    def occupied_sites(self):
        """All sites with a nonzero mark, as SiteIndex tuples."""
        h = self.half_extent
        ia, ib = np.nonzero(self.marks)
        return [SiteIndex(int(x) - h, int(y) - h) for x, y in zip(ia, ib)]


@dataclass
class PointSet:
    """One PPP realization: points (n, 2) in metres, all inside the window."""

    points: np.ndarray
    density: float
    window: Window

    def __len__(self):
        return len(self.points)


# --- raw draw helpers -------------------------------------------------------
#
# The Monte Carlo engine consumes these directly (arrays, no wrapper objects)
# for speed.  The public sample_* operations below wrap the same draws, so
# both paths consume the generator identically.

def draw_uniform_marks(rng: np.random.Generator, half_extent: int, p_b: float) -> np.ndarray:
    side = 2 * half_extent + 1
    u = rng.random((side, side))
    marks = (u < p_b).astype(np.int8)
    marks[half_extent, half_extent] = 0  # outdoor-user conditioning
    return marks


def draw_height_marks(rng: np.random.Generator, half_extent: int, height_probs) -> np.ndarray:
    """Categorical marks; draws exactly one uniform per site.

    Thresholds are cumulative over (p1, ..., pK) so that u < p1 means the
    tallest class — for K = 1 this is bit-identical to draw_uniform_marks
    with p_b = p1.
    """
    side = 2 * half_extent + 1
    u = rng.random((side, side))
    tier_probs = np.asarray(height_probs[1:], dtype=np.float64)
    cum = np.cumsum(tier_probs)
    idx = np.searchsorted(cum, u, side="right")
    marks = np.where(idx < len(tier_probs), idx + 1, 0).astype(np.int8)
    marks[half_extent, half_extent] = 0
    return marks


def draw_ppp_points(rng: np.random.Generator, density: float, half_width: float) -> np.ndarray:
    """(n, 2) uniform points in the window; n ~ Poisson(density * area)."""
    mean = density * (2.0 * half_width) ** 2
    n = int(rng.poisson(mean)) if mean > 0 else 0
    return (rng.random((n, 2)) * 2.0 - 1.0) * half_width


# --- public sampling operations ---------------------------------------------

def sample_uniform_lattice(config: LatticeConfig, window: Window,
                           rng: np.random.Generator) -> LatticeRealization:
    """Independent Bernoulli(p_b) occupancy for every site intersecting the window."""
    if not isinstance(config, LatticeConfig):
        raise ConfigError("sample_uniform_lattice needs a LatticeConfig")
    h = window.site_half_extent(config.site_area_s)
    marks = draw_uniform_marks(rng, h, config.occupancy_p_b)
    return LatticeRealization(config, window, h, marks)


def sample_multiheight_lattice(config: MultiHeightConfig, window: Window,
                               rng: np.random.Generator) -> LatticeRealization:
    """Categorical height marks for every site intersecting the window."""
    if not isinstance(config, MultiHeightConfig):
        raise ConfigError("sample_multiheight_lattice needs a MultiHeightConfig")
    h = window.site_half_extent(config.site_area_s)
    marks = draw_height_marks(rng, h, config.height_probs)
    return LatticeRealization(config, window, h, marks)


def blocking_sites_for_tier(lat: LatticeRealization, k: int) -> set:
    """Sites that block tier k: marks in {1..k} (taller-or-equal height classes).

    Monotone nondecreasing in k.  For a uniform realization K = 1.
    """
    n_heights = getattr(lat.config, "n_heights", 1)
    if not 1 <= k <= n_heights:
        raise ConfigError(f"tier index {k} out of range 1..{n_heights}")
    h = lat.half_extent
    ia, ib = np.nonzero((lat.marks >= 1) & (lat.marks <= k))
    return {SiteIndex(int(x) - h, int(y) - h) for x, y in zip(ia, ib)}


def sample_ppp(density: float, window: Window, rng: np.random.Generator) -> PointSet:
    """Homogeneous PPP inside the window."""
    if density < 0:
        raise ConfigError(f"density must be >= 0, got {density}")
    return PointSet(draw_ppp_points(rng, density, window.half_width), density, window)
