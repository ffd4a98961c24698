"""Command-line entry point: parameter sweeps to CSV, presets, bound inversion.

Subcommands:
  run     evaluate quantities over a sweep, write CSV + JSON run manifest
  preset  print (or save) the resolved config for a reference figure
  invert  bisect the BS density at which an analytic bound hits a target

CSV schema (stable): sweep_param,sweep_value,quantity,value,ci_low,ci_high,trials,seed
Analytic rows leave ci_low/ci_high/trials/seed empty.  The manifest is itself
a loadable config, so `run --config out.manifest.json` reproduces the CSV
byte for byte.

Exit codes: 0 success, 1 configuration error, 2 runtime/numeric error.
"""

import argparse
import csv
import json
import math
import sys
from dataclasses import asdict

from . import __version__, bounds
from .bounds import HetNetScenario, SingleTierScenario
from .lattice import ConfigError, LatticeConfig, MultiHeightConfig
from .montecarlo import estimate_events
from .presets import (PRESET_NAMES, SweepSpec, parse_sweep, preset,
                      validate_config)

_SIM_KIND = {
    "sim_exact": "exact_single",
    "sim_mbfc": "mbfc_single",
    "sim_multiregion": "multiregion_single",
    "sim_exact_hetnet": "exact_hetnet",
    "sim_mbfc_hetnet": "mbfc_hetnet",
    "sim_multiregion_hetnet": "multiregion_hetnet",
}


def _single_scenario(cfg, sweep_name=None, sweep_value=None):
    s = cfg["s"]
    p_b = cfg["p_b"]
    lam = cfg["lambda_c"]
    r_b = cfg["r_b"]
    if sweep_name == "lambda_c":
        lam = sweep_value
    elif sweep_name == "p_b":
        p_b = sweep_value
    elif sweep_name == "s":
        s = sweep_value
    elif sweep_name == "r_b":
        r_b = sweep_value
    elif sweep_name == "r_over_sqrt_s":
        r_b = sweep_value * math.sqrt(s)
    return SingleTierScenario(LatticeConfig(s, p_b), lam, r_b)


def _hetnet_scenario(cfg, sweep_name=None, sweep_value=None):
    s = cfg["s"]
    k = int(cfg["n_tiers"])
    if sweep_name == "s":
        s = sweep_value
    elif sweep_name == "K":
        k = int(round(sweep_value))
        if not 1 <= k <= len(cfg["tier_ranges"]):
            raise ConfigError(
                f"K={k} outside the configured ladder of "
                f"{len(cfg['tier_ranges'])} tiers")
    tier_probs = cfg["tier_height_probs"][:k]
    heights = MultiHeightConfig(s, (1.0 - math.fsum(tier_probs), *tier_probs))
    tiers = tuple(zip(cfg["tier_densities"][:k], cfg["tier_ranges"][:k]))
    return HetNetScenario(heights, tiers)


def _analytic_value(qid, sc):
    if qid == "thm1":
        return bounds.pc_lb_mbfc(sc).value
    if qid == "thm1_semi":
        return bounds.pc_mbfc_semi_analytic(sc).value
    if qid == "thm2":
        return bounds.pc_lb_mbfc_dense(sc).value
    if qid == "thm2_small_pb":
        return bounds.pc_lb_mbfc_dense(sc, small_pb_approx=True).value
    if qid == "thm3":
        return bounds.pc_lb_multiregion(sc).value
    if qid == "thm4":
        return bounds.pc_lb_multiregion_dense(sc).value
    if qid == "n_minus":
        return float(bounds.n_bounds(sc.range_r_b, sc.lattice.site_area_s)[0])
    if qid == "n_plus":
        return float(bounds.n_bounds(sc.range_r_b, sc.lattice.site_area_s)[1])
    if qid == "n_exact":
        from .geometry import exact_covered_site_count
        return float(exact_covered_site_count(sc.range_r_b, sc.lattice.site_area_s))
    if qid == "n_asym":
        return bounds.n_asymptotic(sc.range_r_b, sc.lattice.site_area_s)
    if qid == "hetnet_max":
        return bounds.hetnet_lb_max(sc).value
    if qid == "hetnet_max_dense":
        return bounds.hetnet_lb_max(sc, dense=True).value
    if qid == "hetnet_independent":
        return bounds.hetnet_lb_independent(sc).value
    if qid == "hetnet_independent_tight":
        return bounds.hetnet_lb_independent(sc, tightened=True).value
    if qid == "hetnet_multiregion":
        return bounds.hetnet_lb_multiregion(sc).value
    raise ConfigError(f"unknown analytic quantity {qid!r}")


def _rows_for_point(cfg, sweep_name, sweep_value):
    """All CSV rows for one sweep point, in the configured quantity order."""
    single = cfg["scenario"] == "single"
    sc = (_single_scenario if single else _hetnet_scenario)(cfg, sweep_name,
                                                            sweep_value)
    sim_ids = [q for q in cfg["quantities"] if q in _SIM_KIND or q == "sim_per_tier"]
    events = None
    if sim_ids:
        events = estimate_events(sc, cfg["trials"], cfg["seed"],
                                 cfg["user_placement"])
    rows = []
    for qid in cfg["quantities"]:
        if qid == "sim_per_tier":
            for k in range(1, sc.n_tiers + 1):
                e = events[f"per_tier_{k}"]
                rows.append((f"sim_tier_{k}", e.p_hat, e.ci_low, e.ci_high,
                             e.trials, e.master_seed))
        elif qid in _SIM_KIND:
            e = events[_SIM_KIND[qid]]
            rows.append((qid, e.p_hat, e.ci_low, e.ci_high, e.trials,
                         e.master_seed))
        else:
            rows.append((qid, _analytic_value(qid, sc), None, None, None, None))
    return rows


def run_experiment(cfg: dict, out_path: str):
    """Execute a validated config; write CSV and manifest; return row count."""
    sweep = cfg["sweep"]
    if sweep is None:
        points = [("none", 0.0)]
        sweep_name = None
    else:
        sweep_name = sweep.name
        points = [(sweep.name, v) for v in sweep.values()]

    all_rows = []
    for name, value in points:
        for (qid, val, lo, hi, trials, seed) in _rows_for_point(
                cfg, sweep_name, value if sweep_name else None):
            all_rows.append((name, value, qid, val, lo, hi, trials, seed))

    fmt = lambda x: "" if x is None else repr(x)
    with open(out_path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["sweep_param", "sweep_value", "quantity", "value",
                    "ci_low", "ci_high", "trials", "seed"])
        for name, value, qid, val, lo, hi, trials, seed in all_rows:
            w.writerow([name, repr(float(value)), qid, repr(float(val)),
                        fmt(lo), fmt(hi),
                        "" if trials is None else str(trials),
                        "" if seed is None else str(seed)])

    manifest = dict(cfg)
    if isinstance(manifest.get("sweep"), SweepSpec):
        manifest["sweep"] = asdict(manifest["sweep"])
    manifest["out"] = out_path
    manifest["version"] = __version__
    mpath = (out_path[:-4] if out_path.endswith(".csv") else out_path) + ".manifest.json"
    with open(mpath, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return len(all_rows)


def invert_density(target_pc: float, cfg: dict, bound_id: str,
                   tol: float = 1e-6) -> float:
    """Smallest lambda_c at which the bound reaches target_pc (|gap| <= tol).

    The single-tier bounds are continuous and strictly increasing in lambda_c
    with value 0 at lambda_c = 0, so plain bisection on an exponentially
    grown bracket suffices.
    """
    if bound_id not in ("thm1", "thm2", "thm3", "thm4"):
        raise ConfigError(f"invert supports thm1/thm2/thm3/thm4, got {bound_id!r}")
    if not 0.0 <= target_pc < 1.0:
        raise ConfigError("target must be in [0, 1)")
    if target_pc == 0.0:
        return 0.0

    def f(lam):
        cfg2 = dict(cfg)
        cfg2["lambda_c"] = lam
        return _analytic_value(bound_id, _single_scenario(cfg2))

    lo, hi = 0.0, 1e-6
    for _ in range(120):
        if f(hi) >= target_pc:
            break
        hi *= 4.0
        if hi > 1e6:
            raise ArithmeticError(
                f"{bound_id} never reaches {target_pc}: supremum over "
                f"lambda_c is below the target (unreachable)")
    else:
        raise ArithmeticError(f"{bound_id} never reaches {target_pc}")

    for _ in range(400):
        mid = 0.5 * (lo + hi)
        v = f(mid)
        if abs(v - target_pc) <= tol:
            return mid
        if v < target_pc:
            lo = mid
        else:
            hi = mid
        if hi - lo <= 1e-18 * max(hi, 1.0):
            break
    v = f(hi)
    if abs(v - target_pc) <= tol:
        return hi
    raise ArithmeticError(
        f"bisection stalled: nearest bound value {v} vs target {target_pc}")


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise ConfigError(message)


def _build_parser():
    p = _Parser(prog="mmwave-lattice",
                description="Connectivity bounds and Monte Carlo sweeps for "
                            "lattice-blocked mmWave networks")
    sub = p.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a sweep and write CSV + manifest")
    run.add_argument("--config", help="JSON config (or a run manifest)")
    run.add_argument("--preset", choices=PRESET_NAMES,
                     help="start from a figure preset instead of a config file")
    run.add_argument("--sweep", help="name=a:b:n[:log]")
    run.add_argument("--trials", type=int)
    run.add_argument("--trials-per-point", type=int, dest="trials_per_point",
                     help="alias for --trials (wins if both are given)")
    run.add_argument("--seed", type=int)
    run.add_argument("--out")
    run.add_argument("--quantities", help="comma-separated quantity ids")

    pre = sub.add_parser("preset", help="print a resolved preset config")
    pre.add_argument("name", choices=PRESET_NAMES)
    pre.add_argument("--out", help="write the config JSON here instead of stdout")

    inv = sub.add_parser("invert", help="solve for lambda_c hitting a target bound")
    inv.add_argument("--target", type=float, required=True)
    inv.add_argument("--bound", default="thm2",
                     choices=["thm1", "thm2", "thm3", "thm4"])
    inv.add_argument("--config", help="JSON config for the fixed parameters")
    return p


def _load_config(args) -> dict:
    if getattr(args, "config", None) and getattr(args, "preset", None):
        raise ConfigError("--config and --preset are mutually exclusive")
    if getattr(args, "preset", None):
        cfg = preset(args.preset)
    elif getattr(args, "config", None):
        with open(args.config) as fh:
            cfg = validate_config(json.load(fh))
    else:
        cfg = validate_config({})
    if getattr(args, "sweep", None):
        cfg["sweep"] = parse_sweep(args.sweep)
        cfg = validate_config({**cfg, "sweep": cfg["sweep"]})
    if getattr(args, "trials", None) is not None:
        cfg["trials"] = args.trials
    if getattr(args, "trials_per_point", None) is not None:
        cfg["trials"] = args.trials_per_point
    if getattr(args, "seed", None) is not None:
        cfg["seed"] = args.seed
    if getattr(args, "quantities", None):
        cfg["quantities"] = [q.strip() for q in args.quantities.split(",") if q.strip()]
        cfg = validate_config(cfg)
    if getattr(args, "out", None):
        cfg["out"] = args.out
    return validate_config({**cfg,
                            "sweep": asdict(cfg["sweep"]) if cfg["sweep"] else None})


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        if args.command == "preset":
            cfg = preset(args.name)
            cfg["sweep"] = asdict(cfg["sweep"]) if cfg["sweep"] else None
            text = json.dumps(cfg, indent=2, sort_keys=True) + "\n"
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
            return 0
        if args.command == "run":
            cfg = _load_config(args)
            n = run_experiment(cfg, cfg["out"])
            print(f"wrote {n} rows to {cfg['out']}")
            return 0
        if args.command == "invert":
            cfg = _load_config(args)
            if cfg["scenario"] != "single":
                raise ConfigError("invert works on single-tier configs")
            lam = invert_density(args.target, cfg, args.bound)
            print(repr(lam))
            return 0
        raise ConfigError(f"unknown command {args.command!r}")
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (OSError, ArithmeticError, ValueError) as exc:
        print(f"runtime error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
