"""CLI: exit codes, CSV schema, manifest round-trip, presets, inversion."""

import csv
import json
import math

import pytest

import mmwave_lattice as mwl
from mmwave_lattice.cli import main

HEADER = ["sweep_param", "sweep_value", "quantity", "value",
          "ci_low", "ci_high", "trials", "seed"]


def read_rows(path):
    with open(path, newline="") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


def test_run_no_sweep_schema(tmp_path, capsys):
    out = tmp_path / "point.csv"
    rc = main(["run", "--trials", "200", "--out", str(out),
               "--quantities", "thm1,thm3,sim_exact"])
    assert rc == 0
    header, rows = read_rows(out)
    assert header == HEADER
    assert {r[2] for r in rows} == {"thm1", "thm3", "sim_exact"}
    for r in rows:
        assert r[0] == "none" and float(r[1]) == 0.0
        if r[2].startswith("sim_"):
            assert r[6] == "200" and r[7] == "42"
            assert float(r[4]) <= float(r[3]) <= float(r[5])
        else:  # analytic rows carry no CI/trials/seed
            assert r[4] == r[5] == r[6] == r[7] == ""
    assert "wrote" in capsys.readouterr().out


def test_manifest_round_trip_byte_identical(tmp_path):
    out1 = tmp_path / "a.csv"
    rc = main(["run", "--preset", "fig6", "--trials", "60", "--out", str(out1)])
    assert rc == 0
    manifest = tmp_path / "a.manifest.json"
    assert manifest.exists()
    cfg = json.loads(manifest.read_text())
    assert cfg["seed"] == 42 and cfg["trials"] == 60
    out2 = tmp_path / "b.csv"
    rc = main(["run", "--config", str(manifest), "--out", str(out2)])
    assert rc == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_sweep_override(tmp_path):
    out = tmp_path / "s.csv"
    rc = main(["run", "--sweep", "p_b=0.1:0.5:3", "--trials", "50",
               "--quantities", "thm1,sim_mbfc", "--out", str(out)])
    assert rc == 0
    _, rows = read_rows(out)
    assert {r[0] for r in rows} == {"p_b"}
    vals = sorted({float(r[1]) for r in rows})
    assert vals == pytest.approx([0.1, 0.3, 0.5])
    assert len(rows) == 6  # 3 points x 2 quantities


def test_log_sweep_values(tmp_path):
    out = tmp_path / "l.csv"
    rc = main(["run", "--sweep", "s=1:100:3:log", "--trials", "30",
               "--quantities", "thm1", "--out", str(out)])
    assert rc == 0
    _, rows = read_rows(out)
    assert sorted(float(r[1]) for r in rows) == pytest.approx([1.0, 10.0, 100.0])


def test_per_tier_rows(tmp_path):
    out = tmp_path / "t.csv"
    rc = main(["run", "--preset", "tiers", "--trials", "40",
               "--sweep", "K=1:2:2", "--quantities", "sim_per_tier",
               "--out", str(out)])
    assert rc == 0
    _, rows = read_rows(out)
    got = {(r[0], float(r[1]), r[2]) for r in rows}
    assert ("K", 1.0, "sim_tier_1") in got
    assert ("K", 2.0, "sim_tier_2") in got
    assert ("K", 1.0, "sim_tier_2") not in got  # only K tiers exist at point K


def test_preset_subcommand_valid_config(tmp_path, capsys):
    rc = main(["preset", "fig5"])
    assert rc == 0
    cfg = json.loads(capsys.readouterr().out)
    assert cfg["sweep"]["name"] == "lambda_c"
    out = tmp_path / "cfg.json"
    rc = main(["preset", "fig7", "--out", str(out)])
    assert rc == 0
    cfg = json.loads(out.read_text())
    assert cfg["sweep"]["log"] is True
    # a printed preset is itself a runnable config
    out_csv = tmp_path / "run.csv"
    cfg["trials"] = 20
    cfg["quantities"] = ["thm1"]
    cfg["out"] = str(out_csv)
    cfg_path = tmp_path / "cfg2.json"
    cfg_path.write_text(json.dumps(cfg))
    assert main(["run", "--config", str(cfg_path)]) == 0
    assert out_csv.exists()


def test_exit_code_config_errors(tmp_path, capsys):
    assert main(["run", "--quantities", "thm9", "--out", str(tmp_path / "x.csv")]) == 1
    assert main(["run", "--sweep", "bogus=1:2:3", "--out", str(tmp_path / "x.csv")]) == 1
    assert main(["run", "--sweep", "p_b=0.1:0.5", "--out", str(tmp_path / "x.csv")]) == 1
    assert main(["run", "--preset", "nope", "--out", str(tmp_path / "x.csv")]) == 1
    cfgp = tmp_path / "c.json"
    cfgp.write_text(json.dumps({"unknown_key": 1}))
    assert main(["run", "--config", str(cfgp)]) == 1
    cfgp.write_text(json.dumps({"p_b": 1.5}))
    assert main(["run", "--config", str(cfgp)]) == 1
    both = main(["run", "--config", str(cfgp), "--preset", "fig5"])
    assert both == 1
    capsys.readouterr()  # swallow the error prints


def test_exit_code_runtime_errors(tmp_path, capsys):
    rc = main(["run", "--trials", "20", "--quantities", "thm1",
               "--out", str(tmp_path / "no_dir" / "x.csv")])
    assert rc == 2
    # unreachable inversion target: the multiregion bound saturates at
    # 1 - p_b^8 = 0.99993439 as lambda_c -> inf
    rc = main(["invert", "--target", "0.99999", "--bound", "thm3"])
    assert rc == 2
    capsys.readouterr()


def test_invert_forward_consistency(capsys):
    rc = main(["invert", "--target", "0.9", "--bound", "thm2"])
    assert rc == 0
    lam = float(capsys.readouterr().out.strip())
    sc = mwl.SingleTierScenario(mwl.LatticeConfig(30.0, 0.3), lam, 150.0)
    assert abs(mwl.pc_lb_mbfc_dense(sc).value - 0.9) <= 1e-6


def test_invert_zero_target(capsys):
    rc = main(["invert", "--target", "0.0", "--bound", "thm1"])
    assert rc == 0
    assert float(capsys.readouterr().out.strip()) == 0.0


def test_invert_rejects_bad_target(capsys):
    assert main(["invert", "--target", "1.0", "--bound", "thm1"]) == 1
    assert main(["invert", "--target", "-0.1", "--bound", "thm1"]) == 1
    capsys.readouterr()


def test_argparse_failures_are_config_errors(tmp_path, capsys):
    # bad enum values and unknown flags must map to exit 1, not argparse's raise
    assert main(["invert", "--target", "0.5", "--bound", "thm7"]) == 1
    assert main(["frobnicate"]) == 1
    assert main([]) == 1
    capsys.readouterr()


def test_float_round_trip_via_repr(tmp_path):
    out = tmp_path / "rt.csv"
    main(["run", "--trials", "30", "--quantities", "thm1,thm4", "--out", str(out)])
    _, rows = read_rows(out)
    sc = mwl.SingleTierScenario(mwl.LatticeConfig(30.0, 0.3), 6e-5, 150.0)
    want = {"thm1": mwl.pc_lb_mbfc(sc).value,
            "thm4": mwl.pc_lb_multiregion_dense(sc).value}
    for r in rows:
        assert float(r[3]) == want[r[2]]  # repr round-trips exactly
