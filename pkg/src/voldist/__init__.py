"""Heavy-tailed distribution analysis of realized and implied volatility.

The package builds n-day annualized realized variance from daily closing
prices, fits stable / generalized-beta-type / gamma-type families by
maximum likelihood scored with the Kolmogorov-Smirnov statistic, fits the
difference of implied and rescaled realized variance with normal,
generalized Student's t, Tricomi-U, and stable laws, and verifies by
simulation that the volatility diffusion's steady state matches its
analytic generalized-beta-prime form.
"""

from .distributions import (
    DistributionSpec,
    ExponentReport,
    cdf,
    exponents,
    log_pdf,
    pdf,
    power_transform,
    sample,
)
from .fitting import (
    AcfFit,
    FitResult,
    SweepReport,
    TailFit,
    acf_fit,
    correlation_from_difference,
    ks_statistic,
    mle_fit,
    n_sweep,
    tail_fit,
)
from .sdelab import SdeConfig, simulate, steady_state_spec
from .specfun import (
    QuadratureConfig,
    beta_fn,
    ln_gamma,
    reg_inc_beta,
    reg_inc_gamma_lower,
    reg_inc_gamma_upper,
    tricomi_u,
)
from .volseries import (
    AcfCurve,
    AlignedPair,
    DatedSeries,
    IndexSeries,
    PriceSeries,
    ReturnSeries,
    VarianceSeries,
    align,
    autocorrelation,
    difference_series,
    log_returns,
    mean_ratio,
    realized_variance,
)

__version__ = "0.1.0"
