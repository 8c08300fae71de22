"""Location-scale families used for difference series: normal, generalized
Student's t, and the symmetric density built on the Tricomi confluent
hypergeometric function U.

The Tricomi family has density

    f(x) = Gamma(q+1/2) U(q+1/2, 3/2-p, (x-mu)^2 / (2 sigma^2))
           / (sqrt(2 pi) sigma B(p, q))

with shape parameters p, q > 0, scale sigma and location mu.  Its tails
fall off like |x-mu|^{-(2q+1)}, which a generalized Student's t with
nu = 2q matches exactly; that makes the t a natural rejection envelope
for sampling.
"""

from __future__ import annotations

import numpy as np
from scipy import special

from ..errors import DomainError, NumericalError
from ..specfun import DEFAULT_QUADRATURE, QuadratureConfig, ln_tricomi_u
from ._numeric import cdf_by_panels
from .reports import ExponentReport

_LN_2PI = np.log(2.0 * np.pi)


def _require_positive(name: str, value: float) -> None:
    if not (np.isfinite(value) and value > 0):
        raise DomainError(f"{name} must be a positive finite number")


def _require_finite(name: str, value: float) -> None:
    if not np.isfinite(value):
        raise DomainError(f"{name} must be finite")


class NormalFamily:
    name = "N"
    param_names = ("mu", "sigma")
    param_kinds = ("loc", "scale")
    support = "real"

    def validate(self, params):
        mu, sigma = params
        _require_finite("mu", mu)
        _require_positive("sigma", sigma)

    def log_pdf(self, params, x):
        mu, sigma = params
        u = (x - mu) / sigma
        return -0.5 * u * u - 0.5 * _LN_2PI - np.log(sigma)

    def cdf(self, params, x):
        mu, sigma = params
        return special.ndtr((x - mu) / sigma)

    def sample(self, params, n, rng):
        mu, sigma = params
        return mu + sigma * rng.standard_normal(n)

    def exponents(self, params):
        return None


class GeneralizedStudentTFamily:
    name = "GST"
    param_names = ("mu", "sigma", "nu")
    param_kinds = ("loc", "scale", "shape")
    support = "real"

    def validate(self, params):
        mu, sigma, nu = params
        _require_finite("mu", mu)
        _require_positive("sigma", sigma)
        _require_positive("nu", nu)

    def log_pdf(self, params, x):
        mu, sigma, nu = params
        u = (x - mu) / sigma
        return (0.5 * (nu + 1.0) * (np.log(nu) - np.log(nu + u * u))
                - 0.5 * np.log(nu) - np.log(sigma) - special.betaln(0.5 * nu, 0.5))

    def cdf(self, params, x):
        mu, sigma, nu = params
        u = (x - mu) / sigma
        w = special.betainc(0.5 * nu, 0.5, nu / (nu + u * u))
        return np.where(u >= 0, 1.0 - 0.5 * w, 0.5 * w)

    def sample(self, params, n, rng):
        mu, sigma, nu = params
        return mu + sigma * rng.standard_t(nu, n)

    def exponents(self, params):
        return None


class TricomiFamily:
    name = "GCHU"
    param_names = ("p", "q", "sigma", "mu")
    param_kinds = ("shape", "shape", "scale", "loc")
    support = "real"
    quad_cfg: QuadratureConfig = DEFAULT_QUADRATURE
    bulk_threshold = 512
    bulk_grid = 400

    def validate(self, params):
        p, q, sigma, mu = params
        _require_positive("p", p)
        _require_positive("q", q)
        _require_positive("sigma", sigma)
        _require_finite("mu", mu)

    def _ln_norm(self, params):
        p, q, sigma, _ = params
        return (special.gammaln(q + 0.5) - 0.5 * _LN_2PI - np.log(sigma)
                - special.betaln(p, q))

    def log_pdf(self, params, x, cfg: QuadratureConfig | None = None):
        p, q, sigma, mu = params
        cfg = cfg or self.quad_cfg
        z = 0.5 * ((x - mu) / sigma) ** 2
        a, b = q + 0.5, 1.5 - p
        out = np.empty_like(z)
        zero = z == 0.0
        if zero.any():
            # density at the center diverges once p <= 1/2
            out[zero] = (special.gammaln(1.0 - b) - special.gammaln(a + 1.0 - b)
                         if b < 1.0 else np.inf)
        if (~zero).any():
            out[~zero] = ln_tricomi_u(a, b, z[~zero], cfg)
        return out + self._ln_norm(params)

    def bulk_log_pdf(self, params, x):
        x = np.asarray(x, dtype=float)
        if x.size <= self.bulk_threshold:
            return self.log_pdf(params, x)
        p, q, sigma, mu = params
        z = 0.5 * ((x - mu) / sigma) ** 2
        a, b = q + 0.5, 1.5 - p
        pos = z > 0
        out = np.empty_like(z)
        if (~pos).any():
            out[~pos] = (special.gammaln(1.0 - b) - special.gammaln(a + 1.0 - b)
                         if b < 1.0 else np.inf)
        zp = z[pos]
        lo = max(zp.min(), 1e-300)
        hi = zp.max()
        if hi / lo < 1e4:
            knots = np.geomspace(lo, hi, 65)
            lnu = ln_tricomi_u(a, b, knots, self.quad_cfg)
            out[pos] = np.interp(np.log(zp), np.log(knots), lnu)
        else:
            from scipy.interpolate import PchipInterpolator
            knots = np.geomspace(lo, hi, self.bulk_grid)
            lnu = ln_tricomi_u(a, b, knots, self.quad_cfg)
            spl = PchipInterpolator(np.log(knots), lnu, extrapolate=True)
            out[pos] = spl(np.log(zp))
        return out + self._ln_norm(params)

    def _pdf_vec(self, params, exact=False):
        evaluate = self.log_pdf if exact else self.bulk_log_pdf

        def pdf(x):
            with np.errstate(over="ignore"):
                return np.exp(evaluate(params, np.asarray(x, dtype=float)))
        return pdf

    def cdf(self, params, x):
        p, q, sigma, mu = params
        x = np.asarray(x, dtype=float)
        # quadrature nodes are interior, so the exact density is safe even
        # when it diverges at the center (p <= 1/2)
        return cdf_by_panels(self._pdf_vec(params, exact=x.size <= 256), x,
                             anchor=mu, anchor_cdf=0.5, scale=sigma)

    def sample(self, params, n, rng):
        p, q, sigma, mu = params
        nu = 2.0 * q
        # Tune the envelope width on a coarse grid, then bound the ratio on a
        # fine one; the tail orders match by construction so the ratio has a
        # finite supremum.
        gst = GeneralizedStudentTFamily()
        u_grid = np.concatenate([np.linspace(0, 30, 400), np.geomspace(30, 1e5, 200)])
        xg = mu + sigma * u_grid
        ln_f = self.log_pdf(params, xg)
        best = None
        for s in (0.5, 1.0, 2.0, 4.0):
            env = (mu, sigma * s, nu)
            m = np.max(ln_f - gst.log_pdf(env, xg))
            if best is None or m < best[1]:
                best = (env, m)
        env, ln_m = best
        ln_m += np.log(1.5)  # safety margin over the grid maximum
        out = np.empty(n)
        got = 0
        for _ in range(1000):
            need = int(1.2 * (n - got) * np.exp(ln_m)) + 16
            cand = gst.sample(env, need, rng)
            accept = np.log(rng.uniform(size=need)) <= (
                self.bulk_log_pdf(params, cand) - gst.log_pdf(env, cand) - ln_m)
            take = cand[accept][: n - got]
            out[got:got + take.size] = take
            got += take.size
            if got == n:
                return out
        raise NumericalError("rejection sampling failed to reach the requested count")

    def exponents(self, params):
        return None
