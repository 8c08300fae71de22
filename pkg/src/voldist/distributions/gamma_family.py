"""Gamma-type families on the positive half line.

All six densities (gamma, inverse gamma, their power generalizations,
beta prime, and generalized beta prime) reduce to gamma variates under
power/ratio transforms, which gives exact samplers and incomplete
gamma/beta CDFs.  Parameter orders follow the package convention:

    Ga(alpha, beta)         ~ e^{-x/b} (x/b)^{a-1} / (b Gamma(a))
    GGa(alpha, beta, gamma) ~ g e^{-(x/b)^g} (x/b)^{a g - 1} / (b Gamma(a))
    IGa(alpha, beta)        ~ e^{-b/x} (b/x)^{1+a} / (b Gamma(a))
    GIGa(alpha, beta, gamma)~ g e^{-(b/x)^g} (b/x)^{1+a g} / (b Gamma(a))
    BP(p, q, beta)          ~ (1+x/b)^{-p-q} (x/b)^{p-1} / (b B(p,q))
    GB2(p, q, alpha, beta)  ~ a (1+(x/b)^a)^{-p-q} (x/b)^{p a - 1} / (b B(p,q))

beta is always the scale; the remaining parameters are shapes.
"""

from __future__ import annotations

import numpy as np
from scipy import special

from ..errors import DomainError
from .reports import ExponentReport


def _require_positive(name: str, value: float) -> None:
    if not (np.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite number")


class GammaFamily:
    name = "Ga"
    param_names = ("alpha", "beta")
    param_kinds = ("shape", "scale")
    support = "positive"

    def validate(self, params):
        alpha, beta = params
        _require_positive("alpha", alpha)
        _require_positive("beta", beta)

    def log_pdf(self, params, x):
        alpha, beta = params
        t = x / beta
        return -t + (alpha - 1.0) * np.log(t) - np.log(beta) - special.gammaln(alpha)

    def zero_limit(self, params):
        alpha, beta = params
        if alpha > 1.0:
            return -np.inf
        if alpha == 1.0:
            return -np.log(beta)
        return np.inf

    def cdf(self, params, x):
        alpha, beta = params
        return special.gammainc(alpha, np.maximum(x, 0.0) / beta)

    def sample(self, params, n, rng):
        alpha, beta = params
        return beta * rng.standard_gamma(alpha, n)

    def exponents(self, params):
        alpha, _ = params
        return ExponentReport(front_exponent=alpha - 1.0, tail_exponent=None)


class GeneralizedGammaFamily:
    name = "GGa"
    param_names = ("alpha", "beta", "gamma")
    param_kinds = ("shape", "scale", "shape")
    support = "positive"

    def validate(self, params):
        for nm, v in zip(self.param_names, params):
            _require_positive(nm, v)

    def log_pdf(self, params, x):
        alpha, beta, gamma = params
        lt = np.log(x) - np.log(beta)
        return (np.log(gamma) - np.exp(gamma * lt) + (alpha * gamma - 1.0) * lt
                - np.log(beta) - special.gammaln(alpha))

    def zero_limit(self, params):
        alpha, beta, gamma = params
        ag = alpha * gamma
        if ag > 1.0:
            return -np.inf
        if ag == 1.0:
            return np.log(gamma) - np.log(beta) - special.gammaln(alpha)
        return np.inf

    def cdf(self, params, x):
        alpha, beta, gamma = params
        return special.gammainc(alpha, (np.maximum(x, 0.0) / beta) ** gamma)

    def sample(self, params, n, rng):
        alpha, beta, gamma = params
        return beta * rng.standard_gamma(alpha, n) ** (1.0 / gamma)

    def exponents(self, params):
        alpha, _, gamma = params
        return ExponentReport(front_exponent=alpha * gamma - 1.0, tail_exponent=None)


class InverseGammaFamily:
    name = "IGa"
    param_names = ("alpha", "beta")
    param_kinds = ("shape", "scale")
    support = "positive"

    def validate(self, params):
        alpha, beta = params
        _require_positive("alpha", alpha)
        _require_positive("beta", beta)

    def log_pdf(self, params, x):
        alpha, beta = params
        lt = np.log(beta) - np.log(x)
        return -np.exp(lt) + (1.0 + alpha) * lt - np.log(beta) - special.gammaln(alpha)

    def zero_limit(self, params):
        return -np.inf

    def cdf(self, params, x):
        alpha, beta = params
        out = np.zeros_like(np.asarray(x, dtype=float))
        pos = x > 0
        out[pos] = special.gammaincc(alpha, beta / x[pos])
        return out

    def sample(self, params, n, rng):
        alpha, beta = params
        return beta / rng.standard_gamma(alpha, n)

    def exponents(self, params):
        alpha, _ = params
        return ExponentReport(front_exponent=None, tail_exponent=-(alpha + 1.0))


class GeneralizedInverseGammaFamily:
    name = "GIGa"
    param_names = ("alpha", "beta", "gamma")
    param_kinds = ("shape", "scale", "shape")
    support = "positive"

    def validate(self, params):
        for nm, v in zip(self.param_names, params):
            _require_positive(nm, v)

    def log_pdf(self, params, x):
        alpha, beta, gamma = params
        lt = np.log(beta) - np.log(x)
        return (np.log(gamma) - np.exp(gamma * lt) + (1.0 + alpha * gamma) * lt
                - np.log(beta) - special.gammaln(alpha))

    def zero_limit(self, params):
        return -np.inf

    def cdf(self, params, x):
        alpha, beta, gamma = params
        out = np.zeros_like(np.asarray(x, dtype=float))
        pos = x > 0
        out[pos] = special.gammaincc(alpha, (beta / x[pos]) ** gamma)
        return out

    def sample(self, params, n, rng):
        alpha, beta, gamma = params
        return beta * rng.standard_gamma(alpha, n) ** (-1.0 / gamma)

    def exponents(self, params):
        alpha, _, gamma = params
        return ExponentReport(front_exponent=None, tail_exponent=-(alpha * gamma + 1.0))


class BetaPrimeFamily:
    name = "BP"
    param_names = ("p", "q", "beta")
    param_kinds = ("shape", "shape", "scale")
    support = "positive"

    def validate(self, params):
        for nm, v in zip(self.param_names, params):
            _require_positive(nm, v)

    def log_pdf(self, params, x):
        p, q, beta = params
        lt = np.log(x) - np.log(beta)
        # log1p(e^lt) keeps the tail term exact for x >> beta
        return (-(p + q) * np.logaddexp(0.0, lt) + (p - 1.0) * lt
                - np.log(beta) - special.betaln(p, q))

    def zero_limit(self, params):
        p, q, beta = params
        if p > 1.0:
            return -np.inf
        if p == 1.0:
            return -np.log(beta) - special.betaln(p, q)
        return np.inf

    def cdf(self, params, x):
        p, q, beta = params
        t = np.maximum(x, 0.0) / beta
        return special.betainc(p, q, t / (1.0 + t))

    def sample(self, params, n, rng):
        p, q, beta = params
        return beta * rng.standard_gamma(p, n) / rng.standard_gamma(q, n)

    def exponents(self, params):
        p, q, _ = params
        return ExponentReport(front_exponent=p - 1.0, tail_exponent=-(q + 1.0))


class GeneralizedBetaPrimeFamily:
    name = "GB2"
    param_names = ("p", "q", "alpha", "beta")
    param_kinds = ("shape", "shape", "shape", "scale")
    support = "positive"

    def validate(self, params):
        for nm, v in zip(self.param_names, params):
            _require_positive(nm, v)

    def log_pdf(self, params, x):
        p, q, alpha, beta = params
        lt = alpha * (np.log(x) - np.log(beta))
        return (np.log(alpha) - (p + q) * np.logaddexp(0.0, lt) + (p - 1.0 / alpha) * lt
                - np.log(beta) - special.betaln(p, q))

    def zero_limit(self, params):
        p, q, alpha, beta = params
        pa = p * alpha
        if pa > 1.0:
            return -np.inf
        if pa == 1.0:
            return np.log(alpha) - np.log(beta) - special.betaln(p, q)
        return np.inf

    def cdf(self, params, x):
        p, q, alpha, beta = params
        lt = alpha * (np.log(np.maximum(x, np.finfo(float).tiny)) - np.log(beta))
        u = special.expit(lt)  # (x/b)^a / (1 + (x/b)^a), overflow-safe
        out = special.betainc(p, q, u)
        return np.where(x <= 0, 0.0, out)

    def sample(self, params, n, rng):
        p, q, alpha, beta = params
        return beta * (rng.standard_gamma(p, n) / rng.standard_gamma(q, n)) ** (1.0 / alpha)

    def exponents(self, params):
        p, q, alpha, _ = params
        return ExponentReport(front_exponent=alpha * p - 1.0, tail_exponent=-(alpha * q + 1.0))
