"""Figure rendering for the CLI report path.

Every plot is built from the same delimited files the CLI writes to
``plotdata/``, so the figures are a convenience view of data the user
already has.  Matplotlib runs on the Agg backend; each helper writes one
PNG and closes its figure.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

_COLORS = plt.rcParams["axes.prop_cycle"].by_key()["color"]


def _save(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def series_figure(dates, values, ylabel, path, title=""):
    fig, ax = plt.subplots(figsize=(9, 4))
    ax.plot(np.asarray(dates, dtype="datetime64[D]"), values, lw=0.6)
    ax.set_xlabel("date")
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    _save(fig, path)


def fit_figure(centers, density, curves: dict, path, title="", logx=True, logy=True):
    """Histogram of the sample (points) with fitted densities (lines)."""
    fig, ax = plt.subplots(figsize=(7, 5))
    keep = density > 0
    ax.plot(centers[keep], density[keep], "o", ms=3.5, color="k", label="data")
    for i, (name, (x, y)) in enumerate(sorted(curves.items())):
        ax.plot(x, y, lw=1.2, color=_COLORS[i % len(_COLORS)], label=name)
    if logx:
        ax.set_xscale("log")
    if logy:
        ax.set_yscale("log")
        pos = density[keep]
        ax.set_ylim(bottom=max(pos.min() * 0.3, 1e-300))
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.legend(fontsize=8)
    if title:
        ax.set_title(title)
    _save(fig, path)


def ks_vs_n_figure(n_values, ks_by_family: dict, path, title="KS statistic vs window length"):
    fig, ax = plt.subplots(figsize=(7, 5))
    for i, (name, ks) in enumerate(sorted(ks_by_family.items())):
        ax.plot(n_values, ks, "o-", ms=3, lw=1.0,
                color=_COLORS[i % len(_COLORS)], label=name)
    ax.set_xlabel("window length n (trading days)")
    ax.set_ylabel("KS statistic")
    ax.legend(fontsize=8)
    ax.set_title(title)
    _save(fig, path)


def exponents_vs_n_figure(n_values, series: dict, path, title="Power-law exponents vs window length"):
    """``series`` maps label -> (n_array, value_array)."""
    fig, ax = plt.subplots(figsize=(7, 5))
    for i, (name, (ns, vals)) in enumerate(sorted(series.items())):
        ax.plot(ns, vals, "o-", ms=3, lw=1.0,
                color=_COLORS[i % len(_COLORS)], label=name)
    ax.axhline(0.0, color="gray", lw=0.6)
    ax.set_xlabel("window length n (trading days)")
    ax.set_ylabel("exponent")
    ax.legend(fontsize=7)
    ax.set_title(title)
    _save(fig, path)


def acf_figure(lags, acf_values, fitted, path, title="Autocorrelation of daily realized variance"):
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.plot(lags, acf_values, "o", ms=2.5, color="k", label="sample ACF")
    if fitted is not None:
        ax.plot(lags, fitted, lw=1.4, color=_COLORS[1], label="fitted decay")
    ax.set_xlabel("lag (trading days)")
    ax.set_ylabel("autocorrelation")
    ax.legend(fontsize=8)
    ax.set_title(title)
    _save(fig, path)


def sde_figure(samples, x_grid, analytic_pdf, path, title="Simulated steady state vs analytic density"):
    fig, ax = plt.subplots(figsize=(7, 5))
    ax.hist(samples, bins=80, density=True, alpha=0.45, label="simulation")
    ax.plot(x_grid, analytic_pdf, lw=1.4, color="k", label="analytic steady state")
    ax.set_xlabel("x")
    ax.set_ylabel("density")
    ax.legend(fontsize=8)
    ax.set_title(title)
    _save(fig, path)
