"""Time-series construction: log returns, n-day annualized realized
variance, mean-ratio rescaling, difference series, autocorrelation, and
forward alignment of implied-volatility dates with realized windows.

Realized variance over an n-trading-day window is

    RV2 = 100^2 * (252 / n) * sum of the n squared daily log returns,

an annualized quantity in squared index points (252 trading days per
year).  Calendar gaps carry no special treatment anywhere: every
operation counts trading days only.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import pandas as pd

from .errors import DataError, DegenerateDataError, DomainError

ANNUALIZATION = 100.0**2 * 252.0


def _as_dates(dates) -> np.ndarray:
    arr = np.asarray(dates, dtype="datetime64[D]")
    if arr.ndim != 1:
        raise DataError("dates must be one-dimensional")
    return arr


@dataclass(frozen=True)
class PriceSeries:
    """Date-stamped closing prices or volatility-index levels."""

    dates: np.ndarray
    closes: np.ndarray

    def __post_init__(self):
        dates = _as_dates(self.dates)
        closes = np.asarray(self.closes, dtype=float)
        if dates.size != closes.size:
            raise DataError("dates and closes must have equal length")
        if dates.size < 2:
            raise DataError("a price series needs at least two observations")
        if not np.all(np.diff(dates).astype(int) > 0):
            raise DataError("dates must be strictly increasing")
        if not np.all(np.isfinite(closes)) or np.any(closes <= 0):
            raise DomainError("all closes must be positive and finite")
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "closes", closes)

    def __len__(self) -> int:
        return int(self.dates.size)


IndexSeries = PriceSeries


@dataclass(frozen=True)
class DatedSeries:
    """A generic date-stamped series of real values."""

    dates: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        dates = _as_dates(self.dates)
        values = np.asarray(self.values, dtype=float)
        if dates.size != values.size:
            raise DataError("dates and values must have equal length")
        if dates.size and not np.all(np.diff(dates).astype(int) > 0):
            raise DataError("dates must be strictly increasing")
        object.__setattr__(self, "dates", dates)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.dates.size)


@dataclass(frozen=True)
class ReturnSeries(DatedSeries):
    """Daily log returns, stamped on the later of the two price dates."""


@dataclass(frozen=True)
class VarianceSeries(DatedSeries):
    """Annualized realized variance; dates mark each window's last day."""

    window_n: int = 1

    def __post_init__(self):
        super().__post_init__()
        if self.window_n < 1:
            raise DomainError("window_n must be at least 1")
        if np.any(self.values < 0):
            raise DomainError("variance values cannot be negative")


@dataclass(frozen=True)
class AcfCurve:
    """Sample autocorrelation at positive integer lags (trading days)."""

    lags: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        lags = np.asarray(self.lags, dtype=int)
        values = np.asarray(self.values, dtype=float)
        if lags.size != values.size:
            raise DataError("lags and values must have equal length")
        object.__setattr__(self, "lags", lags)
        object.__setattr__(self, "values", values)


def log_returns(prices: PriceSeries) -> ReturnSeries:
    """Daily log returns r_i = ln(S_i / S_{i-1})."""
    values = np.diff(np.log(prices.closes))
    return ReturnSeries(dates=prices.dates[1:], values=values)


def realized_variance(returns: ReturnSeries, n: int, mode: str = "rolling") -> VarianceSeries:
    """Annualized realized variance over n-day windows.

    ``rolling`` slides the window one trading day at a time; ``disjoint``
    advances by n days, so its values are the stride-n subsequence of the
    rolling ones.
    """
    if n < 1:
        raise DomainError("window length n must be at least 1")
    if mode not in ("rolling", "disjoint"):
        raise DomainError(f"unknown mode {mode!r}; expected 'rolling' or 'disjoint'")
    r2 = returns.values**2
    if n > r2.size:
        raise DataError(f"window n={n} exceeds the {r2.size} available returns")
    csum = np.concatenate([[0.0], np.cumsum(r2)])
    sums = csum[n:] - csum[:-n]
    values = (ANNUALIZATION / n) * sums
    dates = returns.dates[n - 1:]
    if mode == "disjoint":
        values = values[::n]
        dates = dates[::n]
    return VarianceSeries(dates=dates, values=np.maximum(values, 0.0), window_n=n)


def mean_ratio(a, b) -> float:
    """mean(a) / mean(b); the rescaling factor applied to realized variance
    before it is compared with (or subtracted from) implied variance."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size == 0 or b.size == 0:
        raise DataError("mean_ratio requires nonempty series")
    mb = b.mean()
    if mb == 0.0:
        raise DomainError("mean of the denominator series is zero")
    return float(a.mean() / mb)


def difference_series(iv_sq, rv_sq, ratio: float) -> np.ndarray:
    """Element-wise iv_sq - ratio * rv_sq on date-aligned inputs."""
    iv_sq = np.asarray(iv_sq, dtype=float)
    rv_sq = np.asarray(rv_sq, dtype=float)
    if iv_sq.shape != rv_sq.shape:
        raise DataError("difference_series requires equal-length aligned inputs")
    return iv_sq - ratio * rv_sq


def autocorrelation(values, max_lag: int) -> AcfCurve:
    """Biased (divide-by-N) sample autocorrelation at lags 1..max_lag."""
    x = np.asarray(values, dtype=float)
    if max_lag < 1:
        raise DomainError("max_lag must be at least 1")
    if x.size <= max_lag + 1:
        raise DataError("series too short for the requested number of lags")
    xc = x - x.mean()
    c0 = np.dot(xc, xc) / x.size
    if c0 == 0.0:
        raise DegenerateDataError("autocorrelation of a constant series is undefined")
    lags = np.arange(1, max_lag + 1)
    vals = np.array([np.dot(xc[:-k], xc[k:]) / x.size for k in lags]) / c0
    return AcfCurve(lags=lags, values=vals)


@dataclass(frozen=True)
class AlignedPair:
    """An implied-variance series paired with the forward realized window."""

    dates: np.ndarray
    implied: np.ndarray
    realized: np.ndarray


def align(a: DatedSeries | PriceSeries, rv: VarianceSeries) -> AlignedPair:
    """Pair each date t of ``a`` with the realized-variance window that starts
    on the next trading day after t and ends rv.window_n trading days later.

    The rolling variance series doubles as the trading calendar: its dates
    are consecutive trading days, so the forward window ending n days after
    t sits n positions past t.  Dates without a match are dropped.
    """
    a_dates = a.dates
    a_values = a.closes if isinstance(a, PriceSeries) else a.values
    n = rv.window_n
    pos = np.searchsorted(rv.dates, a_dates)
    found = (pos < rv.dates.size) & (rv.dates[np.minimum(pos, rv.dates.size - 1)] == a_dates)
    target = pos + n
    usable = found & (target < rv.dates.size)
    if not usable.any():
        raise DataError("no alignable dates between the two series")
    return AlignedPair(
        dates=a_dates[usable],
        implied=a_values[usable],
        realized=rv.values[target[usable]],
    )


def read_price_csv(path) -> PriceSeries:
    """Read a two-column ``date,close`` CSV (ISO-8601 dates, header required)."""
    try:
        frame = pd.read_csv(path, dtype=str)
    except FileNotFoundError:
        raise DataError(f"input file not found: {path}") from None
    except Exception as exc:
        raise DataError(f"cannot parse {path}: {exc}") from None
    cols = [c.strip().lower() for c in frame.columns]
    if cols[:2] != ["date", "close"]:
        raise DataError(f"{path}: expected header 'date,close', got {list(frame.columns)!r}")
    if len(frame) == 0:
        raise DataError(f"{path}: no data rows")
    dates = np.empty(len(frame), dtype="datetime64[D]")
    closes = np.empty(len(frame), dtype=float)
    for i, (d, c) in enumerate(zip(frame.iloc[:, 0], frame.iloc[:, 1])):
        line = i + 2  # 1-based, after the header
        try:
            dates[i] = np.datetime64(str(d).strip(), "D")
        except ValueError:
            raise DataError(f"{path}: line {line}: bad date {d!r}") from None
        try:
            closes[i] = float(c)
        except (TypeError, ValueError):
            raise DataError(f"{path}: line {line}: bad close {c!r}") from None
    return PriceSeries(dates=dates, closes=closes)


def write_series_csv(path, dates, values, value_name: str = "value") -> None:
    """Write a dated series as CSV with columns ``date,<value_name>``."""
    pd.DataFrame({"date": np.asarray(dates, dtype="datetime64[D]"),
                  value_name: np.asarray(values, dtype=float)}).to_csv(path, index=False)


def clip_date_range(series, start=None, end=None):
    """Restrict a dated series to the half-open window [start, end)."""
    mask = np.ones(series.dates.size, dtype=bool)
    if start is not None:
        mask &= series.dates >= np.datetime64(start, "D")
    if end is not None:
        mask &= series.dates < np.datetime64(end, "D")
    if not mask.any():
        raise DataError("date filter removed every observation")
    kwargs = {}
    if isinstance(series, VarianceSeries):
        kwargs["window_n"] = series.window_n
    if isinstance(series, PriceSeries):
        return PriceSeries(dates=series.dates[mask], closes=series.closes[mask])
    return type(series)(dates=series.dates[mask], values=series.values[mask], **kwargs)
