"""Experiment configuration, figure presets, and quantity registry.

A config is a flat JSON-able dict (see DEFAULT_SINGLE / DEFAULT_HETNET for the
schema).  Presets return fully resolved configs reproducing the data behind
the reference figures; the CLI can also load a run manifest as a config, which
is what makes runs round-trippable.

Sweepable parameter names: lambda_c, p_b, s, r_b (single tier),
r_over_sqrt_s (site-count curves), K (number of tiers), s for hetnet.
"""

import math
from dataclasses import dataclass

from .lattice import ConfigError

# reference defaults (single tier): r_b = 150 m, lambda_c = 6e-5 /m^2,
# s = 30 m^2, p_b = 0.3; hetnet: K = 3, ranges {150, 90, 50}, tier densities
# {1, 5, 10} x 4e-5, height probs {0.4, 0.1, 0.2, 0.3}.
DEFAULT_SINGLE = {
    "scenario": "single",
    "s": 30.0,
    "p_b": 0.3,
    "lambda_c": 6e-5,
    "r_b": 150.0,
    "user_placement": "origin",
    "quantities": ["thm1", "thm2", "thm3", "thm4",
                   "sim_mbfc", "sim_multiregion", "sim_exact"],
    "sweep": None,
    "trials": 100000,
    "seed": 42,
    "out": "results.csv",
}

# Six-rung tier ladder: the first three rungs are the reference 3-tier HetNet;
# rungs 4-6 extend the same pattern (shorter range, denser, lower buildings)
# for the tier-count sweep.  tier_height_probs[k-1] is the probability of a
# building tall enough to block tier k but not tier k-1.
TIER_RANGES = (150.0, 90.0, 50.0, 30.0, 20.0, 12.0)
TIER_DENSITIES = tuple(4e-5 * f for f in (1.0, 5.0, 10.0, 15.0, 20.0, 25.0))
TIER_HEIGHT_PROBS = (0.1, 0.2, 0.3, 0.05, 0.03, 0.02)

DEFAULT_HETNET = {
    "scenario": "hetnet",
    "s": 30.0,
    "n_tiers": 3,
    "tier_ranges": list(TIER_RANGES[:3]),
    "tier_densities": list(TIER_DENSITIES[:3]),
    "tier_height_probs": list(TIER_HEIGHT_PROBS[:3]),
    "user_placement": "origin",
    "quantities": ["hetnet_max", "hetnet_independent", "hetnet_multiregion",
                   "sim_exact_hetnet"],
    "sweep": None,
    "trials": 100000,
    "seed": 42,
    "out": "results.csv",
}

SINGLE_ANALYTIC = ("thm1", "thm1_semi", "thm2", "thm2_small_pb", "thm3", "thm4",
                   "n_minus", "n_plus", "n_exact", "n_asym")
SINGLE_SIM = ("sim_exact", "sim_mbfc", "sim_multiregion")
HETNET_ANALYTIC = ("hetnet_max", "hetnet_max_dense", "hetnet_independent",
                   "hetnet_independent_tight", "hetnet_multiregion")
HETNET_SIM = ("sim_exact_hetnet", "sim_mbfc_hetnet", "sim_multiregion_hetnet",
              "sim_per_tier")

SWEEP_NAMES_SINGLE = ("lambda_c", "p_b", "s", "r_b", "r_over_sqrt_s")
SWEEP_NAMES_HETNET = ("K", "s")


@dataclass(frozen=True)
class SweepSpec:
    name: str
    start: float
    stop: float
    steps: int
    log: bool = False

    def __post_init__(self):
        if self.steps < 1:
            raise ConfigError(f"sweep steps must be >= 1, got {self.steps}")
        if self.log and (self.start <= 0 or self.stop <= 0):
            raise ConfigError("log sweep needs positive endpoints")

    def values(self):
        n = self.steps
        if n == 1:
            return [self.start]
        if self.log:
            la, lb = math.log10(self.start), math.log10(self.stop)
            return [10.0 ** (la + (lb - la) * i / (n - 1)) for i in range(n)]
        return [self.start + (self.stop - self.start) * i / (n - 1)
                for i in range(n)]


def parse_sweep(text: str) -> SweepSpec:
    """Parse 'name=a:b:n' or 'name=a:b:n:log'."""
    if "=" not in text:
        raise ConfigError(f"sweep must look like name=a:b:n[:log], got {text!r}")
    name, _, rng = text.partition("=")
    parts = rng.split(":")
    if len(parts) not in (3, 4) or (len(parts) == 4 and parts[3] != "log"):
        raise ConfigError(f"sweep must look like name=a:b:n[:log], got {text!r}")
    try:
        start, stop, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise ConfigError(f"bad sweep numbers in {text!r}")
    return SweepSpec(name.strip(), start, stop, steps, len(parts) == 4)


def validate_config(cfg: dict) -> dict:
    """Fill defaults, type-check, and reject unknown keys / sweep names."""
    kind = cfg.get("scenario", "single")
    if kind not in ("single", "hetnet"):
        raise ConfigError(f"scenario must be 'single' or 'hetnet', got {kind!r}")
    base = dict(DEFAULT_SINGLE if kind == "single" else DEFAULT_HETNET)
    known = set(base) | {"version"}
    unknown = set(cfg) - known
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    base.update({k: v for k, v in cfg.items() if k != "version"})
    base["scenario"] = kind

    sweep = base.get("sweep")
    if isinstance(sweep, str):
        base["sweep"] = parse_sweep(sweep)
    elif isinstance(sweep, dict):
        base["sweep"] = SweepSpec(sweep["name"], float(sweep["start"]),
                                  float(sweep["stop"]), int(sweep["steps"]),
                                  bool(sweep.get("log", False)))
    elif sweep is not None and not isinstance(sweep, SweepSpec):
        raise ConfigError("sweep must be a string, object, or null")

    names = SWEEP_NAMES_SINGLE if kind == "single" else SWEEP_NAMES_HETNET
    if base["sweep"] is not None and base["sweep"].name not in names:
        raise ConfigError(
            f"sweep parameter {base['sweep'].name!r} not sweepable for "
            f"{kind}; choose from {names}")

    allowed = (SINGLE_ANALYTIC + SINGLE_SIM if kind == "single"
               else HETNET_ANALYTIC + HETNET_SIM)
    bad = [q for q in base["quantities"] if q not in allowed]
    if bad:
        raise ConfigError(f"unknown quantities for {kind}: {bad}; "
                          f"available: {list(allowed)}")
    if int(base["trials"]) < 1:
        raise ConfigError("trials must be >= 1")
    base["trials"] = int(base["trials"])
    base["seed"] = int(base["seed"])
    if base["user_placement"] not in ("origin", "uniform_in_empty_site"):
        raise ConfigError(f"bad user_placement {base['user_placement']!r}")
    if kind == "hetnet":
        k = int(base["n_tiers"])
        for key in ("tier_ranges", "tier_densities", "tier_height_probs"):
            if len(base[key]) != k:
                raise ConfigError(f"{key} must have n_tiers={k} entries")
    return base


def preset(name: str) -> dict:
    """Resolved config for one of the reference figures."""
    if name == "fig3":
        cfg = dict(DEFAULT_SINGLE)
        cfg.update(s=1.0,
                   quantities=["n_minus", "n_plus", "n_exact", "n_asym"],
                   sweep=SweepSpec("r_over_sqrt_s", 0.5, 50.0, 100),
                   out="fig3.csv")
        return validate_config(cfg)
    if name == "fig5":
        cfg = dict(DEFAULT_SINGLE)
        cfg.update(sweep=SweepSpec("lambda_c", 1e-5, 2e-4, 20), out="fig5.csv")
        return validate_config(cfg)
    if name == "fig6":
        cfg = dict(DEFAULT_SINGLE)
        cfg.update(sweep=SweepSpec("p_b", 0.05, 0.95, 19), out="fig6.csv")
        return validate_config(cfg)
    if name == "fig7":
        cfg = dict(DEFAULT_SINGLE)
        cfg.update(sweep=SweepSpec("s", 1.0, 1000.0, 13, log=True),
                   out="fig7.csv")
        return validate_config(cfg)
    if name == "tiers":
        cfg = dict(DEFAULT_HETNET)
        cfg.update(n_tiers=6,
                   tier_ranges=list(TIER_RANGES),
                   tier_densities=list(TIER_DENSITIES),
                   tier_height_probs=list(TIER_HEIGHT_PROBS),
                   quantities=["hetnet_max", "hetnet_independent",
                               "hetnet_multiregion", "sim_exact_hetnet",
                               "sim_per_tier"],
                   sweep=SweepSpec("K", 1, 6, 6), out="tiers.csv")
        return validate_config(cfg)
    if name == "fig_s_hetnet":
        cfg = dict(DEFAULT_HETNET)
        cfg.update(quantities=["hetnet_max", "hetnet_max_dense",
                               "hetnet_independent", "hetnet_multiregion",
                               "sim_exact_hetnet"],
                   sweep=SweepSpec("s", 1.0, 1000.0, 9, log=True),
                   out="fig_s_hetnet.csv")
        return validate_config(cfg)
    raise ConfigError(f"unknown preset {name!r}; "
                      "known: fig3, fig5, fig6, fig7, tiers, fig_s_hetnet")


PRESET_NAMES = ("fig3", "fig5", "fig6", "fig7", "tiers", "fig_s_hetnet")
