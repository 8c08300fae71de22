"""Maximum-likelihood fitting and goodness-of-fit machinery.

Fits are derivative-free: a Nelder-Mead simplex runs in a transformed
parameter space (log for shapes and scales, identity for locations,
logit-type bijections for the stable alpha and beta) so every proposal is
automatically a valid parameter vector.  Multi-start from a
moment-matched initial point plus deterministic dispersed perturbations
guards against the ridges of the four-parameter likelihoods.  Goodness
of fit is scored by the Kolmogorov-Smirnov statistic against the fitted
CDF on the same sample, with no small-sample correction; the usual 95%
band 1.36/sqrt(n) is the reference yardstick.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .distributions import DistributionSpec, ExponentReport, cdf, exponents, get_family
from .errors import (
    DataError,
    DegenerateDataError,
    DomainError,
    InsufficientTailError,
    NumericalError,
)
from .volseries import AcfCurve, ReturnSeries, realized_variance

_DISPERSAL_SEED = 0x5EED_FACE
_BETA_CLIP = 1.0 - 1e-7


@dataclass(frozen=True)
class FitResult:
    """A fitted distribution plus its likelihood and KS score."""

    spec: DistributionSpec
    log_likelihood: float
    ks: float
    exponents: ExponentReport | None
    sample_size: int
    converged: bool
    iterations: int
    restarts: int

    def to_dict(self) -> dict:
        return {
            "family": self.spec.family,
            "params": list(self.spec.params),
            "log_likelihood": self.log_likelihood,
            "ks": self.ks,
            "front_exponent": None if self.exponents is None else self.exponents.front_exponent,
            "tail_exponent": None if self.exponents is None else self.exponents.tail_exponent,
            "sample_size": self.sample_size,
            "converged": self.converged,
            "iterations": self.iterations,
            "restarts": self.restarts,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FitResult":
        rep = None
        if d.get("front_exponent") is not None or d.get("tail_exponent") is not None:
            rep = ExponentReport(d.get("front_exponent"), d.get("tail_exponent"))
        return cls(
            spec=DistributionSpec(d["family"], tuple(d["params"])),
            log_likelihood=d["log_likelihood"],
            ks=d["ks"],
            exponents=rep,
            sample_size=d["sample_size"],
            converged=d["converged"],
            iterations=d["iterations"],
            restarts=d["restarts"],
        )


@dataclass(frozen=True)
class TailFit:
    """OLS slope of ln density vs ln x on a log-binned tail histogram."""

    slope: float
    intercept: float
    window: tuple[float, float]
    point_count: int


@dataclass(frozen=True)
class AcfFit:
    """Parameters of the decay curve c * x^(b-1) * exp(-a x)."""

    a: float
    b: float
    c: float
    residual_sse: float


@dataclass
class SweepReport:
    """Per-window-length fit results for a set of families."""

    n_values: tuple[int, ...]
    families: tuple[str, ...]
    results: dict = field(default_factory=dict)   # (n, family) -> FitResult
    failures: dict = field(default_factory=dict)  # (n, family) -> str
    tails: dict = field(default_factory=dict)     # n -> TailFit

    def to_dict(self) -> dict:
        return {
            "n_values": list(self.n_values),
            "families": list(self.families),
            "results": [
                {"n": n, "family": fam, "fit": fr.to_dict()}
                for (n, fam), fr in sorted(self.results.items())
            ],
            "failures": [
                {"n": n, "family": fam, "error": msg}
                for (n, fam), msg in sorted(self.failures.items())
            ],
            "tails": [
                {"n": n, "slope": t.slope, "intercept": t.intercept,
                 "window": list(t.window), "point_count": t.point_count}
                for n, t in sorted(self.tails.items())
            ],
        }


# ---------------------------------------------------------------------------
# parameter transforms

def _make_transforms(kinds):
    def to_opt(params):
        out = []
        for kind, v in zip(kinds, params):
            if kind in ("shape", "scale"):
                out.append(np.log(v))
            elif kind == "loc":
                out.append(v)
            elif kind == "stable_alpha":
                v = min(max(v, 1e-6), 2.0 - 1e-9)
                out.append(np.log(v / (2.0 - v)))
            elif kind == "stable_beta":
                v = min(max(v, -_BETA_CLIP), _BETA_CLIP)
                out.append(np.arctanh(v))
            else:  # pragma: no cover
                raise DomainError(f"unknown parameter kind {kind}")
        return np.asarray(out, dtype=float)

    def from_opt(t):
        out = []
        for kind, v in zip(kinds, t):
            if kind in ("shape", "scale"):
                out.append(np.exp(v))
            elif kind == "loc":
                out.append(v)
            elif kind == "stable_alpha":
                out.append(2.0 / (1.0 + np.exp(-v)))
            elif kind == "stable_beta":
                out.append(np.tanh(v))
        return tuple(float(v) for v in out)

    return to_opt, from_opt


# ---------------------------------------------------------------------------
# moment-matched starting points

_MCCULLOCH_NU = np.array([
    2.4388, 2.5120, 2.6080, 2.7369, 2.9115, 3.1480, 3.4635, 3.8824,
    4.4468, 5.2172, 6.3140, 7.9098, 10.4480, 14.8378, 23.4831, 44.2813,
])
_MCCULLOCH_ALPHA = np.arange(2.0, 0.45, -0.1)


def _stable_quantile_init(x):
    q05, q25, q50, q75, q95 = np.quantile(x, [0.05, 0.25, 0.50, 0.75, 0.95])
    iqr = max(q75 - q25, 1e-12 * (1.0 + abs(q50)))
    nu_a = (q95 - q05) / iqr
    alpha = float(np.interp(nu_a, _MCCULLOCH_NU, _MCCULLOCH_ALPHA))
    nu_b = (q95 + q05 - 2.0 * q50) / max(q95 - q05, 1e-300)
    beta = float(np.clip(2.0 * nu_b, -0.9, 0.9))
    return (alpha, beta, iqr / 1.654, float(q50))


def moment_init(family: str, x: np.ndarray) -> tuple[float, ...]:
    """Moment/quantile-matched starting parameters for one family."""
    m = float(x.mean())
    v = float(x.var())
    if family == "Ga":
        a = float(np.clip(m * m / max(v, 1e-300), 1e-3, 1e6))
        return (a, m / a)
    if family == "GGa":
        return moment_init("Ga", x) + (1.0,)
    if family == "IGa":
        y = 1.0 / x
        my, vy = float(y.mean()), float(y.var())
        a = float(np.clip(my * my / max(vy, 1e-300), 1e-3, 1e6))
        return (a, a / my)
    if family == "GIGa":
        return moment_init("IGa", x) + (1.0,)
    if family == "BP":
        beta = float(np.median(x))
        q = 2.5
        p = float(np.clip(m * (q - 1.0) / beta, 1e-3, 1e6))
        return (p, q, beta)
    if family == "GB2":
        p, q, beta = moment_init("BP", x)
        return (p, q, 1.0, beta)
    if family == "N":
        return (m, float(max(x.std(), 1e-12)))
    if family == "GST":
        q25, q50, q75 = np.quantile(x, [0.25, 0.50, 0.75])
        return (float(q50), float(max((q75 - q25) / 2.0, 1e-12)), 2.0)
    if family == "GCHU":
        q25, q50, q75 = np.quantile(x, [0.25, 0.50, 0.75])
        return (2.0, 1.0, float(max((q75 - q25) / 1.35, 1e-12)), float(q50))
    if family == "S":
        return _stable_quantile_init(x)
    raise DomainError(f"no initialization recipe for family {family!r}")


# ---------------------------------------------------------------------------
# maximum likelihood

def _check_fit_sample(fam, x):
    if x.size < 50:
        raise DataError(f"need at least 50 samples to fit, got {x.size}")
    if not np.all(np.isfinite(x)):
        raise DataError("samples must be finite")
    if np.ptp(x) == 0.0:
        raise DegenerateDataError("all samples are identical")
    if fam.support == "positive" and np.any(x <= 0):
        raise DomainError("samples must be strictly positive for this family")


def mle_fit(data, family: str, init=None, restarts: int = 8) -> FitResult:
    """Maximize the sample log likelihood over one family.

    ``init``, when given, becomes the first starting point; the rest are the
    moment-matched recipe and deterministic dispersed perturbations of it.
    The returned result is the best optimum across all starts, and the whole
    procedure is deterministic for fixed (data, init, restarts).
    """
    if restarts < 1:
        raise DomainError("restarts must be at least 1")
    x = np.asarray(data, dtype=float).ravel()
    fam = get_family(family)
    _check_fit_sample(fam, x)
    to_opt, from_opt = _make_transforms(fam.param_kinds)
    bulk = getattr(fam, "bulk_log_pdf", fam.log_pdf)

    def nll(t):
        params = from_opt(t)
        if not all(np.isfinite(p) for p in params):
            return np.inf
        with np.errstate(all="ignore"):
            lp = bulk(params, x)
        if not np.all(np.isfinite(lp)):
            return np.inf
        return -float(lp.mean())

    seeds: list[np.ndarray] = []
    if init is not None:
        fam.validate(tuple(float(p) for p in init))
        seeds.append(to_opt(init))
    seeds.append(to_opt(moment_init(family, x)))
    if family == "GB2" and init is None and restarts > 1:
        bp = mle_fit(x, "BP", restarts=2)
        p, q, beta = bp.spec.params
        seeds.append(to_opt((p, q, 1.0, beta)))
    rng = np.random.default_rng(_DISPERSAL_SEED)
    base = seeds[-1]
    while len(seeds) < restarts:
        seeds.append(base + rng.normal(0.0, 0.6, size=base.size))
    seeds = seeds[:restarts]

    best = None
    total_iter = 0
    converged = False
    for t0 in seeds:
        f0 = nll(t0)
        if not np.isfinite(f0):
            continue
        res = minimize(
            nll, t0, method="Nelder-Mead",
            options={
                "maxiter": 400 * t0.size,
                "maxfev": 400 * t0.size,
                "xatol": 1e-8,
                "fatol": 1e-10 * max(1.0, abs(f0)),
            },
        )
        total_iter += int(res.nit)
        if best is None or res.fun < best.fun:
            best = res
            converged = bool(res.success)
    if best is None:
        raise NumericalError(
            f"no {family} start produced a finite likelihood on this sample")

    params = from_opt(best.x)
    spec = DistributionSpec(family, params)
    rep = get_family(family).exponents(params)
    return FitResult(
        spec=spec,
        log_likelihood=-float(best.fun) * x.size,
        ks=ks_statistic(x, spec),
        exponents=rep,
        sample_size=int(x.size),
        converged=converged,
        iterations=total_iter,
        restarts=len(seeds),
    )


def ks_statistic(data, spec: DistributionSpec) -> float:
    """Kolmogorov-Smirnov sup distance between the empirical CDF of the
    sample and the fitted CDF."""
    x = np.sort(np.asarray(data, dtype=float).ravel())
    if x.size == 0:
        raise DataError("cannot compute a KS statistic on an empty sample")
    f = cdf(spec, x)
    i = np.arange(1, x.size + 1, dtype=float)
    d_plus = np.max(i / x.size - f)
    d_minus = np.max(f - (i - 1.0) / x.size)
    return float(max(d_plus, d_minus))


def tail_fit(data, quantile_window=(0.90, 0.999), bins: int = 20) -> TailFit:
    """Log-log OLS slope of a logarithmically binned tail histogram.

    The slope estimates the density's power-law exponent directly (a Pareto
    tail with survival x^-mu gives slope -(mu+1))."""
    q_lo, q_hi = quantile_window
    if not (0.5 <= q_lo < q_hi <= 1.0):
        raise DomainError("quantile window must satisfy 0.5 <= q_lo < q_hi <= 1")
    x = np.asarray(data, dtype=float).ravel()
    lo, hi = np.quantile(x, [q_lo, q_hi])
    if lo <= 0 or hi <= lo:
        raise InsufficientTailError("tail window is empty or not strictly positive")
    edges = np.geomspace(lo, hi, bins + 1)
    counts, _ = np.histogram(x, bins=edges)
    widths = np.diff(edges)
    density = counts / (widths * x.size)
    centers = np.sqrt(edges[:-1] * edges[1:])
    keep = density > 0
    if keep.sum() < 3:
        raise InsufficientTailError(
            f"only {int(keep.sum())} nonempty bins in the tail window")
    lx = np.log(centers[keep])
    ly = np.log(density[keep])
    slope, intercept = np.polyfit(lx, ly, 1)
    return TailFit(slope=float(slope), intercept=float(intercept),
                   window=(float(lo), float(hi)), point_count=int(keep.sum()))


def acf_fit(curve: AcfCurve) -> AcfFit:
    """Least-squares fit of c * x^(b-1) * exp(-a x) to an autocorrelation
    curve over its lags."""
    lags = np.asarray(curve.lags, dtype=float)
    y = np.asarray(curve.values, dtype=float)
    if lags.size < 10:
        raise DomainError("acf_fit needs at least 10 lags")

    pos = y > 0
    if pos.sum() >= 3:
        # exact in log space when the curve is noise-free and positive
        feats = np.column_stack([np.ones(pos.sum()), np.log(lags[pos]), -lags[pos]])
        coef, *_ = np.linalg.lstsq(feats, np.log(y[pos]), rcond=None)
        c0 = float(np.exp(coef[0]))
        b0 = float(coef[1] + 1.0)
        a0 = float(max(coef[2], 1e-8))
    else:
        a0, b0, c0 = 1.0 / lags.max(), 1.0, float(max(y.max(), 0.1))

    def sse(t):
        a, b, c = np.exp(t[0]), t[1], np.exp(t[2])
        m = c * lags ** (b - 1.0) * np.exp(-a * lags)
        return float(np.sum((m - y) ** 2))

    t0 = np.array([np.log(a0), b0, np.log(c0)])
    res = minimize(sse, t0, method="Nelder-Mead",
                   options={"maxiter": 4000, "maxfev": 4000,
                            "xatol": 1e-12, "fatol": 1e-16})
    a, b, c = float(np.exp(res.x[0])), float(res.x[1]), float(np.exp(res.x[2]))
    fit = AcfFit(a=a, b=b, c=c, residual_sse=float(res.fun))
    if not res.success:
        err = NumericalError(f"acf fit did not converge after {res.nit} iterations")
        err.best_fit = fit
        raise err
    return fit


def n_sweep(returns: ReturnSeries, n_values, families, mode: str = "rolling",
            restarts: int = 4, quantile_window=(0.90, 0.999), bins: int = 20,
            threads: int = 1) -> SweepReport:
    """Fit every family to the realized-variance series of each window
    length n and record KS, exponents, and an empirical tail slope.

    A failing (n, family) combination is recorded, not fatal.  Strictly
    non-positive variance values (flat price days) are dropped before
    fitting, since the families live on the open half line.
    """
    n_values = tuple(sorted(set(int(n) for n in n_values)))
    families = tuple(families)
    if not n_values or not families:
        raise DomainError("n_sweep needs nonempty n_values and families")
    report = SweepReport(n_values=n_values, families=families)

    samples = {}
    for n in n_values:
        rv = realized_variance(returns, n, mode=mode)
        samples[n] = rv.values[rv.values > 0]
        try:
            report.tails[n] = tail_fit(samples[n], quantile_window, bins)
        except (DataError, DomainError) as exc:
            report.failures[(n, "__tail__")] = str(exc)

    def run(task):
        n, fam = task
        try:
            return task, mle_fit(samples[n], fam, restarts=restarts), None
        except Exception as exc:  # recorded per task
            return task, None, f"{type(exc).__name__}: {exc}"

    tasks = [(n, fam) for n in n_values for fam in families]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            outcomes = list(pool.map(run, tasks))
    else:
        outcomes = [run(t) for t in tasks]
    for task, fit, err in outcomes:
        if fit is not None:
            report.results[task] = fit
        else:
            report.failures[task] = err
    return report


def correlation_from_difference(sigma_a: float, sigma_b: float, sigma_diff: float) -> float:
    """Correlation implied by the standard deviations of two series and of
    their difference: rho = (s_a^2 + s_b^2 - s_diff^2) / (2 s_a s_b).

    A result outside [-1, 1] signals inconsistent inputs (e.g. mismatched
    normalizations); it is returned as-is with a warning."""
    if sigma_a <= 0 or sigma_b <= 0:
        raise DomainError("sigma_a and sigma_b must be positive")
    rho = (sigma_a**2 + sigma_b**2 - sigma_diff**2) / (2.0 * sigma_a * sigma_b)
    if not -1.0 <= rho <= 1.0:
        warnings.warn(
            f"implied correlation {rho:.6f} falls outside [-1, 1]; "
            "the three deviations are mutually inconsistent",
            RuntimeWarning, stacklevel=2)
    return float(rho)


# ---------------------------------------------------------------------------
# table export

def _format_params(res: FitResult) -> str:
    inner = ", ".join(f"{p:.4f}" for p in res.spec.params)
    return f"{res.spec.family}({inner})"


def fit_table_rows(results) -> list[dict]:
    """Rows with columns (type, parameters, front exp, tail exp, KS test)."""
    rows = []
    for res in results:
        front = tail = None
        if res.exponents is not None:
            front = res.exponents.front_exponent
            tail = res.exponents.tail_exponent
        rows.append({
            "type": res.spec.family,
            "parameters": _format_params(res),
            "front exp": front,
            "tail exp": tail,
            "KS test": res.ks,
        })
    return rows


def render_markdown_table(rows) -> str:
    """Markdown pipe table for a list of uniform dict rows."""
    if not rows:
        return "(no rows)\n"
    cols = list(rows[0].keys())

    def fmt(v):
        if v is None:
            return ""
        if isinstance(v, float):
            return f"{v:.4f}"
        return str(v)

    lines = ["| " + " | ".join(cols) + " |",
             "| " + " | ".join("---" for _ in cols) + " |"]
    for row in rows:
        lines.append("| " + " | ".join(fmt(row[c]) for c in cols) + " |")
    return "\n".join(lines) + "\n"
