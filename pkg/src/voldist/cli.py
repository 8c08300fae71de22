"""Command-line pipeline: CSV price/index series in, fit tables, plot
data, and rendered figures out.

    voldist [--config run.toml] [--out DIR] [--threads K] [--seed N] COMMAND

Commands
    rv          daily log returns and n-day annualized realized variance
    fit         MLE fit table for one series (rv2, rv, vix2, vix, vxo2, vxo)
    diff        rescaled implied-minus-realized difference series fits
    sweep       fits and tail slopes for every window length n
    acf         autocorrelation of daily realized variance plus decay fit
    sde-verify  simulate the volatility diffusion and test its steady state

Each command writes into its own directory under ``--out``:
``tables/`` (csv/json/md), ``plotdata/`` (csv), and ``figures/`` (png).
Reruns with the same configuration overwrite the outputs byte-identically.

Exit codes: 0 success, 2 configuration error, 3 data error,
4 numerical failure.
"""

from __future__ import annotations

import json
import math
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path

import click
import numpy as np
import pandas as pd

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

from . import report
from .distributions import (
    DIFFERENCE_FAMILIES,
    TABLE_FAMILIES,
    DistributionSpec,
    pdf,
)
from .errors import (
    ConfigError,
    DataError,
    DomainError,
    NumericalError,
    VolDistError,
)
from .fitting import (
    FitResult,
    acf_fit,
    fit_table_rows,
    ks_statistic,
    mle_fit,
    n_sweep,
    render_markdown_table,
    tail_fit,
)
from .sdelab import SdeConfig, simulate, steady_state_spec
from .volseries import (
    align,
    autocorrelation,
    clip_date_range,
    log_returns,
    mean_ratio,
    difference_series,
    read_price_csv,
    realized_variance,
    write_series_csv,
)

SERIES_CHOICES = ("rv2", "rv", "vix2", "vix", "vxo2", "vxo", "file")
PAIR_CHOICES = ("vix2-rv2", "vxo2-rv2", "vix-rv", "vxo-rv")


@dataclass
class RunConfig:
    """Everything a command run needs, merged from TOML and CLI flags."""

    prices: str | None = None
    vix: str | None = None
    vxo: str | None = None
    start: str | None = None
    end: str | None = None
    n: int = 21
    mode: str = "rolling"
    families: tuple[str, ...] = TABLE_FAMILIES
    diff_families: tuple[str, ...] = DIFFERENCE_FAMILIES
    restarts: int = 8
    sweep_n_values: tuple[int, ...] = tuple(range(1, 22))
    sweep_restarts: int = 4
    tail_q_lo: float = 0.90
    tail_q_hi: float = 0.999
    tail_bins: int = 20
    max_lag: int = 250
    out_dir: str = "out"
    formats: tuple[str, ...] = ("csv", "json", "md")
    threads: int = 1
    seed: int = 0
    sde: dict = field(default_factory=dict)


def load_config(path: str | None) -> RunConfig:
    cfg = RunConfig()
    if path is None:
        return cfg
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from None

    inputs = raw.get("inputs", {})
    cfg.prices = inputs.get("prices", cfg.prices)
    cfg.vix = inputs.get("vix", cfg.vix)
    cfg.vxo = inputs.get("vxo", cfg.vxo)
    rng = raw.get("range", {})
    cfg.start = rng.get("start", cfg.start)
    cfg.end = rng.get("end", cfg.end)
    rv = raw.get("rv", {})
    cfg.n = int(rv.get("n", cfg.n))
    cfg.mode = rv.get("mode", cfg.mode)
    fit = raw.get("fit", {})
    cfg.families = tuple(fit.get("families", cfg.families))
    cfg.diff_families = tuple(fit.get("diff_families", cfg.diff_families))
    cfg.restarts = int(fit.get("restarts", cfg.restarts))
    sweep = raw.get("sweep", {})
    cfg.sweep_n_values = tuple(int(v) for v in sweep.get("n_values", cfg.sweep_n_values))
    cfg.sweep_restarts = int(sweep.get("restarts", cfg.sweep_restarts))
    tail = raw.get("tail", {})
    cfg.tail_q_lo = float(tail.get("q_lo", cfg.tail_q_lo))
    cfg.tail_q_hi = float(tail.get("q_hi", cfg.tail_q_hi))
    cfg.tail_bins = int(tail.get("bins", cfg.tail_bins))
    acf = raw.get("acf", {})
    cfg.max_lag = int(acf.get("max_lag", cfg.max_lag))
    out = raw.get("output", {})
    cfg.out_dir = out.get("dir", cfg.out_dir)
    cfg.formats = tuple(out.get("formats", cfg.formats))
    cfg.sde = dict(raw.get("sde", {}))

    if cfg.n < 1:
        raise ConfigError("rv.n must be at least 1")
    if cfg.mode not in ("rolling", "disjoint"):
        raise ConfigError(f"unknown rv.mode {cfg.mode!r}")
    unknown = [f for f in cfg.formats if f not in ("csv", "json", "md")]
    if unknown:
        raise ConfigError(f"unknown output formats: {unknown}")
    return cfg


# ---------------------------------------------------------------------------
# shared plumbing

def _dirs(cfg: RunConfig, command: str) -> dict[str, Path]:
    base = Path(cfg.out_dir) / command
    out = {}
    for sub in ("tables", "plotdata", "figures"):
        p = base / sub
        p.mkdir(parents=True, exist_ok=True)
        out[sub] = p
    return out


def _load_series(path: str | None, what: str):
    if not path:
        raise ConfigError(f"no {what} input configured (set [inputs] {what} or pass --{what})")
    return read_price_csv(path)


def _rv2_series(cfg: RunConfig, n: int | None = None, mode: str | None = None):
    prices = _load_series(cfg.prices, "prices")
    returns = log_returns(prices)
    rv2 = realized_variance(returns, n or cfg.n, mode or cfg.mode)
    return clip_date_range(rv2, cfg.start, cfg.end)


def _fit_sample(cfg: RunConfig, series: str) -> tuple[np.ndarray, str]:
    """Positive sample values for one of the named series."""
    if series in ("rv2", "rv"):
        rv2 = _rv2_series(cfg)
        vals = rv2.values[rv2.values > 0]
        return (np.sqrt(vals) if series == "rv" else vals), series
    name = series.rstrip("2")
    idx = clip_date_range(_load_series(getattr(cfg, name), name), cfg.start, cfg.end)
    vals = idx.closes**2 if series.endswith("2") else idx.closes
    return vals, series


def _write_json(payload, path: Path) -> None:
    path.write_text(json.dumps(payload, indent=2) + "\n")


def _write_fit_tables(results: list[FitResult], failures: dict[str, str],
                      dirs: dict, cfg: RunConfig, stem: str, extra: dict | None = None):
    rows = fit_table_rows(results)
    for fam, msg in sorted(failures.items()):
        rows.append({"type": fam, "parameters": f"failed: {msg}",
                     "front exp": None, "tail exp": None, "KS test": None})
    if "csv" in cfg.formats:
        pd.DataFrame(rows).to_csv(dirs["tables"] / f"{stem}.csv", index=False)
    if "md" in cfg.formats:
        (dirs["tables"] / f"{stem}.md").write_text(render_markdown_table(rows))
    if "json" in cfg.formats:
        payload = {"fits": [r.to_dict() for r in results], "failures": failures}
        if extra:
            payload.update(extra)
        _write_json(payload, dirs["tables"] / f"{stem}.json")
    return rows


def _histogram(values: np.ndarray, log_bins: bool, bins: int = 60):
    if log_bins:
        lo = values.min()
        edges = np.geomspace(lo, values.max(), bins + 1)
        centers = np.sqrt(edges[:-1] * edges[1:])
    else:
        edges = np.linspace(values.min(), values.max(), bins + 1)
        centers = 0.5 * (edges[:-1] + edges[1:])
    counts, _ = np.histogram(values, bins=edges)
    density = counts / (np.diff(edges) * values.size)
    return edges, centers, density


def _fit_families(values, families, restarts):
    results, failures = [], {}
    for fam in families:
        try:
            results.append(mle_fit(values, fam, restarts=restarts))
        except VolDistError as exc:
            failures[fam] = f"{type(exc).__name__}: {exc}"
    return results, failures


def _curve_grid(values, log_x: bool):
    if log_x:
        return np.geomspace(values.min(), values.max(), 400)
    return np.linspace(values.min(), values.max(), 400)


def _write_fit_plotdata(values, results, dirs, stem, log_x: bool):
    edges, centers, density = _histogram(values, log_bins=log_x)
    pd.DataFrame({
        "bin_left": edges[:-1], "bin_right": edges[1:],
        "bin_center": centers, "density": density,
    }).to_csv(dirs["plotdata"] / f"hist_{stem}.csv", index=False)
    grid = _curve_grid(values, log_x)
    curve_cols = {"x": grid}
    curves = {}
    for res in results:
        y = pdf(res.spec, grid)
        curve_cols[res.spec.family] = y
        curves[res.spec.family] = (grid, y)
    pd.DataFrame(curve_cols).to_csv(dirs["plotdata"] / f"pdf_curves_{stem}.csv", index=False)
    report.fit_figure(centers, density, curves, dirs["figures"] / f"fit_{stem}.png",
                      title=stem, logx=log_x, logy=True)


# ---------------------------------------------------------------------------
# commands

def cmd_rv(cfg: RunConfig) -> None:
    dirs = _dirs(cfg, "rv")
    prices = _load_series(cfg.prices, "prices")
    returns = log_returns(prices)
    rv2 = realized_variance(returns, cfg.n, cfg.mode)
    rv2 = clip_date_range(rv2, cfg.start, cfg.end)
    write_series_csv(dirs["tables"] / "returns.csv", returns.dates, returns.values,
                     value_name="log_return")
    write_series_csv(dirs["tables"] / "rv2.csv", rv2.dates, rv2.values, value_name="rv2")
    write_series_csv(dirs["plotdata"] / "rv2_series.csv", rv2.dates, rv2.values,
                     value_name="rv2")
    report.series_figure(rv2.dates, rv2.values, "annualized realized variance",
                         dirs["figures"] / "rv2_series.png",
                         title=f"{cfg.mode} windows, n={cfg.n}")
    click.echo(f"rv: wrote {rv2.values.size} window values (n={cfg.n}, {cfg.mode})")


def cmd_fit(cfg: RunConfig, series: str, input_path: str | None = None) -> None:
    dirs = _dirs(cfg, "fit")
    if series == "file":
        if not input_path:
            raise ConfigError("--series file requires --input <csv>")
        values, stem = read_price_csv(input_path).closes, "file"
    else:
        values, stem = _fit_sample(cfg, series)
    results, failures = _fit_families(values, cfg.families, cfg.restarts)
    _write_fit_tables(results, failures, dirs, cfg, f"fit_{stem}",
                      extra={"series": stem, "sample_size": int(values.size)})
    if not results:
        raise DataError("every family failed to fit; see the failures table")
    _write_fit_plotdata(values, results, dirs, stem, log_x=True)
    best = min(results, key=lambda r: r.ks)
    click.echo(f"fit {stem}: {len(results)} families, best KS "
               f"{best.ks:.4f} ({best.spec.family})")


def cmd_diff(cfg: RunConfig, pair: str) -> None:
    dirs = _dirs(cfg, "diff")
    implied_name, realized_name = pair.split("-")
    idx_name = implied_name.rstrip("2")
    idx = clip_date_range(_load_series(getattr(cfg, idx_name), idx_name),
                          cfg.start, cfg.end)
    rv2_full = realized_variance(log_returns(_load_series(cfg.prices, "prices")),
                                 cfg.n, "rolling")
    pairings = align(idx, rv2_full)
    implied = pairings.implied**2 if implied_name.endswith("2") else pairings.implied
    realized = pairings.realized if realized_name.endswith("2") else np.sqrt(pairings.realized)
    ratio = mean_ratio(implied, realized)
    diff = difference_series(implied, realized, ratio)
    results, failures = _fit_families(diff, cfg.diff_families, cfg.restarts)
    stem = f"diff_{pair}"
    _write_fit_tables(results, failures, dirs, cfg, stem,
                      extra={"pair": pair, "rescale_ratio": ratio,
                             "sample_size": int(diff.size)})
    if not results:
        raise DataError("every family failed to fit; see the failures table")
    write_series_csv(dirs["plotdata"] / f"{stem}_series.csv", pairings.dates, diff,
                     value_name="difference")
    _write_fit_plotdata(diff, results, dirs, stem, log_x=False)
    best = min(results, key=lambda r: r.ks)
    click.echo(f"diff {pair}: ratio {ratio:.4f}, best KS {best.ks:.4f} "
               f"({best.spec.family})")


def cmd_sweep(cfg: RunConfig) -> None:
    dirs = _dirs(cfg, "sweep")
    prices = _load_series(cfg.prices, "prices")
    returns = log_returns(prices)
    if cfg.start or cfg.end:
        returns = clip_date_range(returns, cfg.start, cfg.end)
    rep = n_sweep(returns, cfg.sweep_n_values, cfg.families, mode=cfg.mode,
                  restarts=cfg.sweep_restarts,
                  quantile_window=(cfg.tail_q_lo, cfg.tail_q_hi),
                  bins=cfg.tail_bins, threads=cfg.threads)
    if "json" in cfg.formats:
        _write_json(rep.to_dict(), dirs["tables"] / "sweep.json")
    long_rows = []
    for (n, fam), fr in sorted(rep.results.items()):
        row = {"n": n, **fit_table_rows([fr])[0]}
        long_rows.append(row)
    if "csv" in cfg.formats:
        pd.DataFrame(long_rows).to_csv(dirs["tables"] / "sweep.csv", index=False)
    if "md" in cfg.formats:
        (dirs["tables"] / "sweep.md").write_text(render_markdown_table(long_rows))

    ks_cols = {"n": list(rep.n_values)}
    front_series, tail_series = {}, {}
    for fam in rep.families:
        ks_cols[fam] = [
            rep.results[(n, fam)].ks if (n, fam) in rep.results else np.nan
            for n in rep.n_values
        ]
        fr_n, fr_v, tl_n, tl_v = [], [], [], []
        for n in rep.n_values:
            fr = rep.results.get((n, fam))
            if fr is None or fr.exponents is None:
                continue
            if fr.exponents.front_exponent is not None:
                fr_n.append(n)
                fr_v.append(fr.exponents.front_exponent)
            if fr.exponents.tail_exponent is not None:
                tl_n.append(n)
                tl_v.append(fr.exponents.tail_exponent)
        if fr_v:
            front_series[fam] = (fr_n, fr_v)
        if tl_v:
            tail_series[fam] = (tl_n, tl_v)
    pd.DataFrame(ks_cols).to_csv(dirs["plotdata"] / "ks_vs_n.csv", index=False)

    exp_rows = [
        {"n": n, "family": fam,
         "front_exponent": fr.exponents.front_exponent if fr.exponents else None,
         "tail_exponent": fr.exponents.tail_exponent if fr.exponents else None}
        for (n, fam), fr in sorted(rep.results.items())
    ]
    pd.DataFrame(exp_rows).to_csv(dirs["plotdata"] / "exponents_vs_n.csv", index=False)
    tail_rows = [{"n": n, "slope": t.slope, "intercept": t.intercept,
                  "window_lo": t.window[0], "window_hi": t.window[1],
                  "bins": t.point_count} for n, t in sorted(rep.tails.items())]
    pd.DataFrame(tail_rows).to_csv(dirs["plotdata"] / "tail_slope_vs_n.csv", index=False)

    # per-n tail comparison: empirical log-binned tail next to each fit
    for n in rep.n_values:
        t = rep.tails.get(n)
        if t is None:
            continue
        grid = np.geomspace(t.window[0], t.window[1], 80)
        cols = {"x": grid, "empirical": np.exp(t.intercept + t.slope * np.log(grid))}
        for fam in rep.families:
            fr = rep.results.get((n, fam))
            if fr is not None:
                cols[fam] = pdf(fr.spec, grid)
        pd.DataFrame(cols).to_csv(dirs["plotdata"] / f"tails_n{n:02d}.csv", index=False)

    report.ks_vs_n_figure(list(rep.n_values),
                          {f: ks_cols[f] for f in rep.families},
                          dirs["figures"] / "ks_vs_n.png")
    if front_series:
        report.exponents_vs_n_figure(list(rep.n_values), front_series,
                                     dirs["figures"] / "front_exponents_vs_n.png",
                                     title="Front exponents vs window length")
    if tail_series:
        report.exponents_vs_n_figure(list(rep.n_values), tail_series,
                                     dirs["figures"] / "tail_exponents_vs_n.png",
                                     title="Tail exponents vs window length")
    click.echo(f"sweep: {len(rep.results)} fits over n in "
               f"[{rep.n_values[0]}, {rep.n_values[-1]}], "
               f"{len(rep.failures)} failures")


def cmd_acf(cfg: RunConfig) -> None:
    dirs = _dirs(cfg, "acf")
    prices = _load_series(cfg.prices, "prices")
    returns = log_returns(prices)
    rv2_daily = realized_variance(returns, 1, "rolling")
    rv2_daily = clip_date_range(rv2_daily, cfg.start, cfg.end)
    curve = autocorrelation(rv2_daily.values, cfg.max_lag)
    noise_band = 3.0 / math.sqrt(rv2_daily.values.size)
    degenerate = bool(np.all(np.abs(curve.values) <= noise_band))
    fitted = None
    payload = {"max_lag": cfg.max_lag, "sample_size": int(rv2_daily.values.size),
               "noise_band": noise_band, "degenerate": degenerate}
    if degenerate:
        payload["fit"] = None
        click.echo("acf: series is white-noise flat; decay fit skipped")
    else:
        try:
            fit = acf_fit(curve)
        except NumericalError as exc:
            fit = exc.best_fit
            payload["converged"] = False
        else:
            payload["converged"] = True
        payload["fit"] = {"a": fit.a, "b": fit.b, "c": fit.c,
                          "residual_sse": fit.residual_sse}
        fitted = fit.c * curve.lags ** (fit.b - 1.0) * np.exp(-fit.a * curve.lags)
        click.echo(f"acf: fitted decay a={fit.a:.4f} b={fit.b:.2f} c={fit.c:.2f}")
    if "json" in cfg.formats:
        _write_json(payload, dirs["tables"] / "acf_fit.json")
    if "csv" in cfg.formats:
        pd.DataFrame([payload.get("fit") or {}]).to_csv(
            dirs["tables"] / "acf_fit.csv", index=False)
    cols = {"lag": curve.lags, "acf": curve.values}
    if fitted is not None:
        cols["fitted"] = fitted
    pd.DataFrame(cols).to_csv(dirs["plotdata"] / "acf.csv", index=False)
    report.acf_figure(curve.lags, curve.values, fitted, dirs["figures"] / "acf.png")


def cmd_sde_verify(cfg: RunConfig) -> None:
    dirs = _dirs(cfg, "sde-verify")
    if not cfg.sde:
        raise ConfigError("sde-verify needs an [sde] section in the config")
    sde_kwargs = dict(cfg.sde)
    sde_kwargs.setdefault("seed", cfg.seed)
    try:
        sde_cfg = SdeConfig(**sde_kwargs)
    except TypeError as exc:
        raise ConfigError(f"bad [sde] section: {exc}") from None
    target = steady_state_spec(sde_cfg)
    samples = simulate(sde_cfg)
    ks = ks_statistic(samples, target)
    threshold = 1.36 / math.sqrt(samples.size)
    passed = bool(ks <= threshold)
    payload = {
        "config": {k: getattr(sde_cfg, k) for k in (
            "eta", "theta", "alpha", "kappa2", "kappa_alpha", "dt",
            "burn_in_steps", "sample_stride", "samples_per_path", "n_paths", "seed")},
        "steady_state": target.to_dict(),
        "n_samples": int(samples.size),
        "ks": ks,
        "threshold": threshold,
        "passed": passed,
    }
    _write_json(payload, dirs["tables"] / "sde_verify.json")
    pd.DataFrame({"sample": samples}).to_csv(dirs["plotdata"] / "samples.csv", index=False)
    grid = np.linspace(np.quantile(samples, 0.001), np.quantile(samples, 0.995), 400)
    report.sde_figure(samples[samples <= grid[-1]], grid, pdf(target, grid),
                      dirs["figures"] / "sde_steady_state.png")
    click.echo(f"sde-verify: KS {ks:.4f} vs threshold {threshold:.4f} "
               f"-> {'pass' if passed else 'FAIL'} ({target.family} steady state)")
    if not passed:
        sys.exit(4)


# ---------------------------------------------------------------------------
# click wiring

def _finish(fn, *args) -> None:
    try:
        fn(*args)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    except (DataError, DomainError) as exc:
        click.echo(f"data error: {exc}", err=True)
        sys.exit(3)
    except NumericalError as exc:
        click.echo(f"numerical failure: {exc}", err=True)
        sys.exit(4)


@click.group(help=__doc__)
@click.option("--config", "config_path", type=click.Path(), default=None,
              help="TOML run configuration.")
@click.option("--out", "out_dir", type=click.Path(), default=None,
              help="Output directory (overrides config).")
@click.option("--threads", type=int, default=None, help="Worker threads for sweeps.")
@click.option("--seed", type=int, default=None, help="Base seed for simulation.")
@click.pass_context
def main(ctx, config_path, out_dir, threads, seed):
    try:
        cfg = load_config(config_path)
    except ConfigError as exc:
        click.echo(f"config error: {exc}", err=True)
        sys.exit(2)
    if out_dir is not None:
        cfg.out_dir = out_dir
    if threads is not None:
        cfg.threads = threads
    if seed is not None:
        cfg.seed = seed
    ctx.obj = cfg


def _series_opts(fn):
    fn = click.option("--prices", type=click.Path(), default=None,
                      help="Price CSV (overrides config).")(fn)
    fn = click.option("--n", "n_days", type=int, default=None,
                      help="Window length in trading days.")(fn)
    fn = click.option("--mode", type=click.Choice(["rolling", "disjoint"]),
                      default=None)(fn)
    return fn


def _apply_overrides(cfg: RunConfig, prices=None, n_days=None, mode=None,
                     restarts=None, vix=None, vxo=None):
    if prices:
        cfg.prices = prices
    if vix:
        cfg.vix = vix
    if vxo:
        cfg.vxo = vxo
    if n_days:
        cfg.n = n_days
    if mode:
        cfg.mode = mode
    if restarts:
        cfg.restarts = restarts
    return cfg


@main.command("rv")
@_series_opts
@click.pass_obj
def rv_command(cfg, prices, n_days, mode):
    """Write daily log returns and the realized-variance series."""
    _finish(cmd_rv, _apply_overrides(cfg, prices, n_days, mode))


@main.command("fit")
@click.option("--series", type=click.Choice(SERIES_CHOICES), default="rv2",
              show_default=True)
@click.option("--input", "input_path", type=click.Path(), default=None,
              help="Sample CSV for --series file (date,close format).")
@click.option("--vix", type=click.Path(), default=None)
@click.option("--vxo", type=click.Path(), default=None)
@click.option("--restarts", type=int, default=None)
@_series_opts
@click.pass_obj
def fit_command(cfg, series, input_path, vix, vxo, restarts, prices, n_days, mode):
    """Fit the heavy-tailed families to one series and write the table."""
    cfg = _apply_overrides(cfg, prices, n_days, mode, restarts, vix, vxo)
    _finish(cmd_fit, cfg, series, input_path)


@main.command("diff")
@click.option("--pair", type=click.Choice(PAIR_CHOICES), default="vix2-rv2",
              show_default=True)
@click.option("--vix", type=click.Path(), default=None)
@click.option("--vxo", type=click.Path(), default=None)
@click.option("--restarts", type=int, default=None)
@_series_opts
@click.pass_obj
def diff_command(cfg, pair, vix, vxo, restarts, prices, n_days, mode):
    """Fit the difference of implied and rescaled realized series."""
    cfg = _apply_overrides(cfg, prices, n_days, mode, restarts, vix, vxo)
    _finish(cmd_diff, cfg, pair)


@main.command("sweep")
@click.option("--n-max", type=int, default=None,
              help="Sweep n = 1..n_max (overrides config list).")
@_series_opts
@click.pass_obj
def sweep_command(cfg, n_max, prices, n_days, mode):
    """Fit every family at every window length and emit the curves."""
    cfg = _apply_overrides(cfg, prices, n_days, mode)
    if n_max is not None:
        cfg.sweep_n_values = tuple(range(1, n_max + 1))
    _finish(cmd_sweep, cfg)


@main.command("acf")
@click.option("--max-lag", type=int, default=None)
@_series_opts
@click.pass_obj
def acf_command(cfg, max_lag, prices, n_days, mode):
    """Autocorrelation of daily realized variance plus its decay fit."""
    cfg = _apply_overrides(cfg, prices, n_days, mode)
    if max_lag is not None:
        cfg.max_lag = max_lag
    _finish(cmd_acf, cfg)


@main.command("sde-verify")
@click.pass_obj
def sde_verify_command(cfg):
    """Simulate the volatility diffusion and test the analytic steady state."""
    _finish(cmd_sde_verify, cfg)


if __name__ == "__main__":
    main()
