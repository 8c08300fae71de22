import json
import math

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from voldist.cli import main
from voldist.distributions import DistributionSpec, sample
from voldist.fitting import FitResult


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    result = runner.invoke(main, list(args), catch_exceptions=False)
    return result


def write_prices(path, closes, start="2015-01-05"):
    d = np.arange(np.datetime64(start, "D"), np.datetime64(start, "D") + 3 * len(closes))
    d = d[np.is_busday(d)][: len(closes)]
    pd.DataFrame({"date": d, "close": closes}).to_csv(path, index=False)
    return path


class TestRvCommand:
    def test_toy_symmetry(self, runner, tmp_path):
        # up 10% then back down: the two squared log returns coincide
        p = write_prices(tmp_path / "p.csv", [100.0, 110.0, 100.0])
        res = invoke(runner, "--out", str(tmp_path / "out"), "rv",
                     "--prices", str(p), "--n", "1")
        assert res.exit_code == 0, res.output
        rv2 = pd.read_csv(tmp_path / "out" / "rv" / "tables" / "rv2.csv")
        want = 100**2 * 252 * math.log(1.1) ** 2
        assert rv2["rv2"].tolist() == pytest.approx([want, want], rel=1e-12)

    def test_empty_file_is_data_error(self, runner, tmp_path):
        bad = tmp_path / "empty.csv"
        bad.write_text("date,close\n")
        res = invoke(runner, "--out", str(tmp_path / "out"), "rv", "--prices", str(bad))
        assert res.exit_code == 3

    def test_missing_input_is_config_error(self, runner, tmp_path):
        res = invoke(runner, "--out", str(tmp_path / "out"), "rv")
        assert res.exit_code == 2

    def test_bad_toml_is_config_error(self, runner, tmp_path):
        cfg = tmp_path / "bad.toml"
        cfg.write_text("[inputs\nprices = 3")
        res = invoke(runner, "--config", str(cfg), "rv")
        assert res.exit_code == 2


class TestFitCommand:
    def test_gamma_sample_file_gamma_wins(self, runner, tmp_path):
        vals = sample(DistributionSpec("Ga", (2.0, 5.0)), 4000, seed=31)
        f = write_prices(tmp_path / "ga.csv", vals)
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            '[fit]\nfamilies = ["Ga", "IGa", "GGa", "BP"]\nrestarts = 2\n'
            f'[output]\ndir = "{tmp_path / "out"}"\n')
        res = invoke(runner, "--config", str(cfg), "fit", "--series", "file",
                     "--input", str(f))
        assert res.exit_code == 0, res.output
        table = json.loads(
            (tmp_path / "out" / "fit" / "tables" / "fit_file.json").read_text())
        fits = {d["family"]: d for d in table["fits"]}
        best = min(fits.values(), key=lambda d: d["ks"])
        assert best["family"] == "Ga"

    def test_json_round_trips_fit_results(self, runner, tmp_path):
        vals = sample(DistributionSpec("Ga", (2.0, 5.0)), 2000, seed=32)
        f = write_prices(tmp_path / "ga.csv", vals)
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            '[fit]\nfamilies = ["Ga", "IGa"]\nrestarts = 2\n'
            f'[output]\ndir = "{tmp_path / "out"}"\n')
        res = invoke(runner, "--config", str(cfg), "fit", "--series", "file",
                     "--input", str(f))
        assert res.exit_code == 0, res.output
        payload = json.loads(
            (tmp_path / "out" / "fit" / "tables" / "fit_file.json").read_text())
        for entry in payload["fits"]:
            fr = FitResult.from_dict(entry)
            assert fr.to_dict() == entry

    def test_outputs_are_idempotent(self, runner, tmp_path):
        vals = sample(DistributionSpec("Ga", (2.0, 5.0)), 1000, seed=33)
        f = write_prices(tmp_path / "ga.csv", vals)
        out = tmp_path / "out"
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            '[fit]\nfamilies = ["Ga"]\nrestarts = 2\n'
            f'[output]\ndir = "{out}"\n')
        paths = ["fit/tables/fit_file.csv", "fit/tables/fit_file.json",
                 "fit/tables/fit_file.md", "fit/plotdata/hist_file.csv",
                 "fit/plotdata/pdf_curves_file.csv"]
        invoke(runner, "--config", str(cfg), "fit", "--series", "file", "--input", str(f))
        first = {p: (out / p).read_bytes() for p in paths}
        invoke(runner, "--config", str(cfg), "fit", "--series", "file", "--input", str(f))
        second = {p: (out / p).read_bytes() for p in paths}
        assert first == second


class TestDiffCommand:
    def test_degenerate_difference_surfaced_per_family(self, runner, tmp_path, synthetic_paths):
        # implied chosen so that implied = ratio * realized exactly: the
        # difference collapses to zero and every family reports degeneracy
        prices = pd.read_csv(synthetic_paths["spx"]).iloc[:300]
        p = tmp_path / "p.csv"
        prices.to_csv(p, index=False)
        r = np.diff(np.log(prices["close"].to_numpy()))
        rv2 = 100**2 * 252 * r**2
        dates = prices["date"].to_numpy()[1:]
        # implied at date t equals the realized value one trading day ahead
        iv = np.full(rv2.size - 1, np.nan)
        iv = np.sqrt(rv2[1:])
        fake = tmp_path / "iv.csv"
        pd.DataFrame({"date": dates[:-1], "close": iv}).to_csv(fake, index=False)
        out = tmp_path / "out"
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            f'[inputs]\nprices = "{p}"\nvix = "{fake}"\n'
            '[rv]\nn = 1\n'
            '[fit]\ndiff_families = ["N", "GST"]\nrestarts = 2\n'
            f'[output]\ndir = "{out}"\n')
        res = invoke(runner, "--config", str(cfg), "diff", "--pair", "vix2-rv2")
        assert res.exit_code == 3
        payload = json.loads(
            (out / "diff" / "tables" / "diff_vix2-rv2.json").read_text())
        assert set(payload["failures"]) == {"N", "GST"}
        assert all("Degenerate" in msg for msg in payload["failures"].values())

    def test_synthetic_pair_runs(self, runner, tmp_path, synthetic_paths):
        out = tmp_path / "out"
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            f'[inputs]\nprices = "{synthetic_paths["spx"]}"\n'
            f'vix = "{synthetic_paths["vix"]}"\n'
            '[fit]\ndiff_families = ["N", "GST"]\nrestarts = 2\n'
            f'[output]\ndir = "{out}"\n')
        res = invoke(runner, "--config", str(cfg), "diff", "--pair", "vix2-rv2")
        assert res.exit_code == 0, res.output
        payload = json.loads(
            (out / "diff" / "tables" / "diff_vix2-rv2.json").read_text())
        assert payload["rescale_ratio"] == pytest.approx(1.4, abs=0.25)
        # heavy-tailed generalized t beats the normal on these differences
        fits = {d["family"]: d["ks"] for d in payload["fits"]}
        assert fits["GST"] < fits["N"]


class TestSweepCommand:
    def test_single_n_matches_fit(self, runner, tmp_path, synthetic_paths):
        out = tmp_path / "out"
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            f'[inputs]\nprices = "{synthetic_paths["spx"]}"\n'
            '[rv]\nn = 21\n'
            '[fit]\nfamilies = ["Ga", "IGa"]\nrestarts = 2\n'
            '[sweep]\nn_values = [21]\nrestarts = 2\n'
            f'[output]\ndir = "{out}"\n')
        res = invoke(runner, "--config", str(cfg), "sweep")
        assert res.exit_code == 0, res.output
        res = invoke(runner, "--config", str(cfg), "fit", "--series", "rv2")
        assert res.exit_code == 0, res.output
        sweep = json.loads((out / "sweep" / "tables" / "sweep.json").read_text())
        fit = json.loads((out / "fit" / "tables" / "fit_rv2.json").read_text())
        sweep_fits = {e["family"]: e["fit"] for e in sweep["results"] if e["n"] == 21}
        fit_fits = {e["family"]: e for e in fit["fits"]}
        for fam in ("Ga", "IGa"):
            assert sweep_fits[fam]["params"] == pytest.approx(
                fit_fits[fam]["params"], rel=1e-12)
        ks = pd.read_csv(out / "sweep" / "plotdata" / "ks_vs_n.csv")
        assert list(ks.columns) == ["n", "Ga", "IGa"]


class TestAcfCommand:
    def test_acf_outputs(self, runner, tmp_path, synthetic_paths):
        out = tmp_path / "out"
        res = invoke(runner, "--out", str(out), "acf",
                     "--prices", str(synthetic_paths["spx"]), "--max-lag", "120")
        assert res.exit_code == 0, res.output
        payload = json.loads((out / "acf" / "tables" / "acf_fit.json").read_text())
        assert not payload["degenerate"]
        assert payload["fit"]["a"] > 0
        curve = pd.read_csv(out / "acf" / "plotdata" / "acf.csv")
        assert list(curve.columns) == ["lag", "acf", "fitted"]
        assert len(curve) == 120

    def test_white_noise_flagged_degenerate(self, runner, tmp_path):
        rng = np.random.default_rng(3)
        closes = 100.0 * np.exp(np.cumsum(rng.normal(0.0, 1e-6, 2000)))
        p = write_prices(tmp_path / "wn.csv", closes)
        out = tmp_path / "out"
        res = invoke(runner, "--out", str(out), "acf", "--prices", str(p),
                     "--max-lag", "50")
        assert res.exit_code == 0, res.output
        payload = json.loads((out / "acf" / "tables" / "acf_fit.json").read_text())
        assert payload["degenerate"] is True
        assert payload["fit"] is None


class TestSdeVerifyCommand:
    def test_pass_case(self, runner, tmp_path):
        out = tmp_path / "out"
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            "[sde]\neta = 1.0\ntheta = 1.0\nalpha = 1.0\nkappa2 = 0.0\n"
            "kappa_alpha = 1.0\ndt = 2e-3\nsamples_per_path = 100\nn_paths = 100\n"
            "seed = 11\n"
            f'[output]\ndir = "{out}"\n')
        res = invoke(runner, "--config", str(cfg), "sde-verify")
        assert res.exit_code == 0, res.output
        payload = json.loads(
            (out / "sde-verify" / "tables" / "sde_verify.json").read_text())
        assert payload["passed"] is True
        assert payload["steady_state"]["family"] == "Ga"
        assert payload["ks"] <= payload["threshold"]
        samples = pd.read_csv(out / "sde-verify" / "plotdata" / "samples.csv")
        assert len(samples) == payload["n_samples"]

    def test_missing_section_is_config_error(self, runner, tmp_path):
        res = invoke(runner, "--out", str(tmp_path / "out"), "sde-verify")
        assert res.exit_code == 2

    def test_figures_written(self, runner, tmp_path):
        out = tmp_path / "out"
        cfg = tmp_path / "run.toml"
        cfg.write_text(
            "[sde]\neta = 1.0\ntheta = 1.0\nalpha = 1.0\nkappa2 = 0.3\n"
            "kappa_alpha = 1.0\ndt = 2e-3\nsamples_per_path = 50\nn_paths = 40\n"
            f'[output]\ndir = "{out}"\n')
        res = invoke(runner, "--config", str(cfg), "sde-verify")
        assert res.exit_code == 0, res.output
        assert (out / "sde-verify" / "figures" / "sde_steady_state.png").stat().st_size > 0
