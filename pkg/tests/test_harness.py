"""Harness: configs, determinism, CLI exit codes, small experiment runs."""

import json
import os

import numpy as np
import pytest

from rlab.harness import (ConfigError, compare, load_config, read_samples,
                          run, summary_lines, write_report, write_samples)
from rlab.harness.cli import (EXIT_CONFIG, EXIT_FAIL, EXIT_OK, EXIT_OUTPUT,
                              main)

SINE = {"fourier": {"0": 0.5, "-1": 0.17677669529663687}}


def hydro_cfg(**kw):
    base = {"experiment": "hydro-hyperbolic", "n": 256, "scheme": "rudvalis",
            "profile": SINE, "K": 8, "times": [0.25], "replicas": 16,
            "seed": 7, "modes": [1]}
    base.update(kw)
    return base


def test_preset_expansion_is_logged():
    cfg = load_config(hydro_cfg())
    expanded = cfg.expanded()
    assert expanded["scheme"]["a"] == 0.5
    assert expanded["scheme"]["realized_at_n"] == [0.5, 0.5, 0.0, 0.0]
    assert "threads" not in expanded  # execution knobs are not identity


def test_config_rejections():
    with pytest.raises(ConfigError):
        load_config(hydro_cfg(scheme={"a": -0.1, "b": 0.5, "c": 0.0, "d": 0.0}))
    with pytest.raises(ConfigError):
        load_config(hydro_cfg(scheme="symmetric"))  # beta mismatch
    with pytest.raises(ConfigError):
        load_config(hydro_cfg(experiment="frobnicate"))
    with pytest.raises(ConfigError):
        load_config(hydro_cfg(times=[0.5, 0.25]))
    with pytest.raises(ConfigError):
        load_config(hydro_cfg(unknown_field=1))
    with pytest.raises(ConfigError):
        load_config(hydro_cfg(profile={"gaussian": 1.0})).profile_callable()
    with pytest.raises(ConfigError):
        load_config("{not json")
    with pytest.raises(ConfigError):
        # r=2 needs a positive swap rate, but this scheme has d=0
        load_config({"experiment": "boundary-decay",
                     "scheme": {"a": 0.0, "b": 0.25, "c": 0.25, "d": 0.0,
                                "beta": 2},
                     "r": 2, "ladder": [16, 32], "replicas": 4, "seed": 0})
    with pytest.raises(ConfigError):
        load_config(hydro_cfg(modes=[0]))


def test_weak_asym_preset_with_arguments():
    cfg = load_config({"experiment": "flucts-diffusive", "n": 64,
                       "scheme": {"preset": "weak-asym", "gamma": 1.0},
                       "rho": 0.5, "K": 4, "times": [0.02], "replicas": 8,
                       "seed": 1, "modes": [1]})
    a, b, c, d = cfg.scheme.realized(64)
    assert b == pytest.approx(0.25 + 1 / 64)


def test_simulate_and_compare_agree(tmp_path):
    cfg = load_config(hydro_cfg())
    report, samples = run(cfg)
    csv = tmp_path / "samples.csv"
    write_samples(samples, str(csv))
    rebuilt = compare(cfg, read_samples(str(csv)))
    assert rebuilt["comparisons"] == report["comparisons"]
    assert rebuilt["curves"] == report["curves"]


def test_csv_and_report_determinism(tmp_path):
    argv = ["simulate", "--config", None, "--out", None]
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(hydro_cfg()))
    outs = []
    for name, threads in (("a", "1"), ("b", "2")):
        out = tmp_path / name
        code = main(["simulate", "--config", str(cfg_path), "--out", str(out),
                     "--threads", threads])
        assert code == EXIT_OK
        outs.append(out)
    assert (outs[0] / "samples.csv").read_bytes() == (outs[1] / "samples.csv").read_bytes()
    assert (outs[0] / "report.json").read_bytes() == (outs[1] / "report.json").read_bytes()


def test_cli_exit_codes(tmp_path):
    # missing config file
    assert main(["simulate", "--config", str(tmp_path / "nope.json")]) == EXIT_CONFIG
    # invalid config content
    bad = tmp_path / "bad.json"
    bad.write_text("{\"experiment\": \"hydro-hyperbolic\"}")
    assert main(["simulate", "--config", str(bad)]) == EXIT_CONFIG
    # unknown flag: argparse usage error (SystemExit 2)
    with pytest.raises(SystemExit) as exc:
        main(["simulate", "--frobnicate"])
    assert exc.value.code == 2
    # unwritable output directory
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(hydro_cfg(replicas=4)))
    assert main(["simulate", "--config", str(cfg_path),
                 "--out", "/proc/nowhere/x"]) == EXIT_OUTPUT


def test_cli_subcommand_experiment_guard(tmp_path):
    cfg_path = tmp_path / "h.json"
    cfg_path.write_text(json.dumps(hydro_cfg(replicas=4)))
    assert main(["oracle", "--config", str(cfg_path)]) == EXIT_CONFIG
    assert main(["spde", "--config", str(cfg_path)]) == EXIT_CONFIG


def test_cli_report_roundtrip(tmp_path, capsys):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(hydro_cfg(replicas=8)))
    out = tmp_path / "out"
    code = main(["simulate", "--config", str(cfg_path), "--out", str(out)])
    assert code == EXIT_OK
    capsys.readouterr()
    code = main(["report", "--report", str(out / "report.json")])
    printed = capsys.readouterr().out
    assert code == EXIT_OK
    assert "psi_coeff" in printed and "comparisons pass" in printed


def test_cli_compare_subcommand(tmp_path):
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(hydro_cfg(replicas=8)))
    out = tmp_path / "out"
    assert main(["simulate", "--config", str(cfg_path), "--out", str(out)]) == EXIT_OK
    out2 = tmp_path / "out2"
    code = main(["compare", "--config", str(cfg_path),
                 "--csv", str(out / "samples.csv"), "--out", str(out2)])
    assert code == EXIT_OK
    r1 = json.loads((out / "report.json").read_text())
    r2 = json.loads((out2 / "report.json").read_text())
    assert r1["comparisons"] == r2["comparisons"]
    # corrupt header is refused
    csv = out / "samples.csv"
    body = csv.read_text().splitlines()
    body[0] = "experiment,n,beta,t,k,kind,real,imag,replica,seed"
    csv.write_text("\n".join(body))
    assert main(["compare", "--config", str(cfg_path), "--csv", str(csv),
                 "--out", str(tmp_path / "out3")]) == EXIT_CONFIG


def test_underpowered_runs_are_inconclusive():
    cfg = load_config(hydro_cfg(replicas=4,
                                tolerance={"se_max": 1e-6}))
    report, _ = run(cfg)
    outcomes = {c["outcome"] for c in report["comparisons"]}
    assert outcomes == {"inconclusive"}
    assert not report["summary"]["all_pass"]


def test_kappa_zero_small_scale():
    cfg = load_config({
        "experiment": "hydro-hyperbolic", "n": 512,
        "scheme": {"a": 0.25, "b": 0.25, "c": 0.5, "d": 0.0, "beta": 1},
        "profile": SINE, "K": 4, "times": [0.5], "replicas": 48,
        "seed": 3, "modes": [1]})
    assert cfg.scheme.kappa == 0.0
    report, _ = run(cfg)
    # coefficients statistically frozen at their initial values
    for row in report["comparisons"]:
        assert row["outcome"] == "pass"
        if row["k"] == -1:
            assert row["target"] == pytest.approx(np.sqrt(2) / 8)


def test_hydro_diffusive_heat_decay():
    cfg = load_config({
        "experiment": "hydro-diffusive", "n": 256, "scheme": "symmetric",
        "profile": SINE, "K": 4, "times": [0.02], "replicas": 200,
        "seed": 17, "modes": [1]})
    report, _ = run(cfg)
    rows = {(r["t"], r["k"]): r for r in report["comparisons"]}
    decay = np.exp(-np.pi**2 * 0.02)
    assert rows[(0.02, -1)]["target"] == pytest.approx(np.sqrt(2) / 8 * decay)
    assert report["summary"]["all_pass"], summary_lines(report)


def test_flucts_hyperbolic_small_scale():
    cfg = load_config({
        "experiment": "flucts-hyperbolic", "n": 256, "scheme": "rudvalis",
        "rho": 0.5, "K": 4, "times": [0.2], "replicas": 600, "seed": 23,
        "modes": [1]})
    report, _ = run(cfg)
    rows = {r["statistic"]: r for r in report["comparisons"]}
    assert rows["psi_autocov"]["target"] == pytest.approx(
        0.25 * np.cos(2 * np.pi * 0.2))
    assert report["summary"]["all_pass"], summary_lines(report)


def test_flucts_diffusive_confirmation_gating():
    cfg = load_config({
        "experiment": "flucts-diffusive", "n": 64, "scheme": "symmetric",
        "rho": 0.5, "K": 4, "times": [0.02], "replicas": 300, "seed": 29,
        "modes": [1], "spde_mc_paths": 20000})
    report, _ = run(cfg)
    assert report["spde_confirmation"], "confirmation block missing"
    for row in report["spde_confirmation"]:
        assert row["outcome"] == "pass"
    stats = {r["statistic"] for r in report["comparisons"]}
    assert {"mode_variance", "mode_autocov_re", "mode_autocov_im",
            "mode_autocov_phase"} <= stats


def test_boundary_decay_small_ladder():
    cfg = load_config({
        "experiment": "boundary-decay", "scheme": "symmetric", "rho": 0.5,
        "ladder": [16, 32, 64], "r": "n", "horizon": 0.5, "replicas": 120,
        "seed": 31})
    report, samples = run(cfg)
    assert [row["n"] for row in report["ladder"]] == [16, 32, 64]
    ests = [row["estimate"] for row in report["ladder"]]
    assert ests[0] > ests[1] > ests[2]
    assert report["summary"]["all_pass"]
    kinds = {s.kind for s in samples}
    assert kinds == {"boundary"}


def test_stationarity_large_n_mode_means():
    # beyond the oracle's reach the marginals are checked statistically:
    # every mode mean of the empirical measure stays rho * delta_{k0}
    cfg = load_config({
        "experiment": "stationarity", "n": 256,
        "scheme": {"preset": "symmetric", "beta": 1}, "rho": 0.35, "K": 4,
        "times": [0.2, 0.6], "replicas": 400, "seed": 43})
    report, _ = run(cfg)
    stats = {r["statistic"] for r in report["comparisons"]}
    assert "state_law_chi2" not in stats  # exact law unavailable at this n
    assert report["summary"]["all_pass"], summary_lines(report)


def test_stationarity_small_n_chi_square():
    cfg = load_config({
        "experiment": "stationarity", "n": 6,
        "scheme": {"preset": "symmetric", "beta": 1}, "rho": 0.4, "K": 1,
        "times": [0.2, 1.0], "replicas": 8000, "seed": 37})
    report, _ = run(cfg)
    chi_rows = [r for r in report["comparisons"]
                if r["statistic"] == "state_law_chi2"]
    assert len(chi_rows) == 2
    assert all(r["outcome"] == "pass" for r in chi_rows)
    assert report["summary"]["all_pass"], summary_lines(report)


def test_oracle_validate_experiment():
    cfg = load_config({"experiment": "oracle-validate", "seed": 0})
    report, samples = run(cfg)
    assert samples == []
    assert report["summary"]["all_pass"]
    assert report["summary"]["comparisons"] == 7 * 7 * 3  # families x n x schemes


def test_spde_reference_experiment(tmp_path):
    cfg = load_config({
        "experiment": "spde-reference", "scheme": "symmetric", "rho": 0.5,
        "K": 4, "times": [0.02, 0.05], "replicas": 64, "seed": 41,
        "modes": [1], "spde_mc_paths": 20000})
    report, samples = run(cfg)
    assert report["summary"]["all_pass"], summary_lines(report)
    assert {s.kind for s in samples} == {"spde"}
    # write/read round trip preserves every sample
    path = tmp_path / "spde.csv"
    write_samples(samples, str(path))
    assert read_samples(str(path)) == samples


def test_report_writer_is_stable(tmp_path):
    cfg = load_config(hydro_cfg(replicas=8))
    report, _ = run(cfg)
    p1, p2 = tmp_path / "r1.json", tmp_path / "r2.json"
    write_report(report, str(p1))
    write_report(report, str(p2))
    assert p1.read_bytes() == p2.read_bytes()
