"""Regenerate the synthetic CSV fixtures under data/synthetic/.

The price series follows a slowly mean-reverting log-variance process so
its realized variance is heavy-tailed and autocorrelated like an equity
index; the implied-volatility fixtures are noisy forward-looking reads of
the same variance path, annualized about 1.4x higher.  Deterministic for
a fixed seed, so the committed files never churn.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
import pandas as pd

OUT = Path(__file__).resolve().parents[1] / "data" / "synthetic"
N_DAYS = 3300
SEED = 20170102


def trading_days(start: str, count: int) -> np.ndarray:
    days = np.arange(np.datetime64(start, "D"), np.datetime64(start, "D") + 2 * count)
    weekdays = days[np.is_busday(days)]
    return weekdays[:count]


def main() -> None:
    rng = np.random.default_rng(SEED)
    dates = trading_days("2004-01-02", N_DAYS)

    ln_vbar = np.log(1.19e-4)  # mean daily variance -> RV2 level near 300
    ln_v = np.empty(N_DAYS)
    ln_v[0] = ln_vbar
    eps = rng.standard_normal(N_DAYS)
    for t in range(1, N_DAYS):
        ln_v[t] = 0.980 * ln_v[t - 1] + 0.020 * ln_vbar + 0.20 * eps[t]
    v = np.exp(ln_v)

    z = rng.standard_t(6, N_DAYS)
    z /= np.sqrt(6.0 / 4.0)  # unit variance
    returns = np.sqrt(v) * z
    prices = 1000.0 * np.exp(np.cumsum(returns))

    # forward 21-day mean variance, annualized to squared index points
    fwd = np.convolve(v, np.ones(21) / 21.0, mode="full")[20:20 + N_DAYS]
    fwd = np.roll(fwd, -21)
    fwd[-21:] = fwd[-22]
    ann = 100.0**2 * 252.0 * fwd
    vix = np.sqrt(1.40 * ann) * np.exp(0.06 * rng.standard_normal(N_DAYS))
    vxo = np.sqrt(1.49 * ann) * np.exp(0.08 * rng.standard_normal(N_DAYS))

    OUT.mkdir(parents=True, exist_ok=True)
    pd.DataFrame({"date": dates, "close": prices}).to_csv(OUT / "spx.csv", index=False)
    # implied series start later, as the real indices do
    lag = 800
    pd.DataFrame({"date": dates[lag:], "close": vix[lag:]}).to_csv(OUT / "vix.csv", index=False)
    pd.DataFrame({"date": dates[lag:], "close": vxo[lag:]}).to_csv(OUT / "vxo.csv", index=False)
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
