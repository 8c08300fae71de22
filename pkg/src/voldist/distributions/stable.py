"""Alpha-stable family in the location-corrected (S0) parameterization.

The density has no closed form in general and is computed from the
single-integral representation: for standardized z > zeta(alpha, beta),

    f(z) = c2(z) * integral over theta of g exp(-g),
    g(theta; z) = A(theta) * (z - zeta)^{alpha/(alpha-1)},

where A is monotone on the integration interval, so g spans (0, inf) and
the integrand is a single bump peaking where g = 1.  The peak angle is
found by vectorized bisection and mapped to a panel edge, after which one
adaptive vector quadrature serves the whole batch of points.  alpha = 1
has its own branch with the same structure; values of alpha within 1e-4
of 1 are snapped to 1 to avoid the blow-up of alpha/(alpha-1).

S0 keeps the density jointly continuous in all four parameters (the
conventional S1 location degenerates at alpha = 1, right where volatility
fits tend to land).  The CDF is obtained by integrating the density away
from the location parameter; sampling uses the Chambers-Mallows-Stuck
construction with the S1-to-S0 location shift.
"""

from __future__ import annotations

import math

import numpy as np
from scipy import special
from scipy.integrate import quad_vec
from scipy.interpolate import PchipInterpolator

from ..errors import DomainError
from ._numeric import adaptive_panel_integrals, asinh_grid, cdf_by_panels
from .reports import ExponentReport

ALPHA_SNAP = 1e-4
_BULK_THRESHOLD = 512
_BULK_KNOTS = 480
_BULK_QUAD_REL = 1e-7  # interpolation error dominates the bulk path anyway
_LN_FLOOR = -745.0


def _snap(alpha: float) -> float:
    return 1.0 if abs(alpha - 1.0) < ALPHA_SNAP else float(alpha)


def _zeta(alpha: float, beta: float) -> float:
    return -beta * math.tan(0.5 * math.pi * alpha)


class _Kernel:
    """ln g(theta; z) = ln A(theta) + s(z) on a fixed angular interval."""

    def __init__(self, alpha: float, beta: float):
        self.alpha = alpha
        self.beta = beta
        if alpha != 1.0:
            self.zeta = _zeta(alpha, beta)
            self.t0 = math.atan(-self.zeta) / alpha
            self.lo = -self.t0
            self.hi = 0.5 * math.pi
            self.at0 = alpha * self.t0
            self.ln_cos_at0 = math.log(math.cos(self.at0))
            self.increasing = alpha < 1.0
        else:
            # requires beta > 0; beta < 0 is handled by reflection upstream
            self.zeta = 0.0
            self.lo = -0.5 * math.pi
            self.hi = 0.5 * math.pi
            self.pi_2b = 0.5 * math.pi / beta
            self.increasing = True
        span = self.hi - self.lo
        self.inset = 1e-9 * span

    def s_of_z(self, z: np.ndarray) -> np.ndarray:
        if self.alpha != 1.0:
            return (self.alpha / (self.alpha - 1.0)) * np.log(z - self.zeta)
        return -0.5 * math.pi * z / self.beta

    def c2_of_z(self, z: np.ndarray) -> np.ndarray:
        if self.alpha != 1.0:
            return self.alpha / (math.pi * abs(self.alpha - 1.0) * (z - self.zeta))
        return np.full_like(z, 0.5 / self.beta)

    def ln_a(self, theta: np.ndarray) -> np.ndarray:
        a = self.alpha
        with np.errstate(divide="ignore", invalid="ignore", over="ignore"):
            if a != 1.0:
                lc = np.log(np.cos(theta))
                ls = np.log(np.sin(a * (self.t0 + theta)))
                lc2 = np.log(np.cos(self.at0 + (a - 1.0) * theta))
                v = (self.ln_cos_at0 + a * (lc - ls)) / (a - 1.0) + lc2 - lc
            else:
                b = self.beta
                v = (np.log1p(2.0 * b * theta / math.pi)
                     + (self.pi_2b + theta) * np.tan(theta)
                     - np.log(np.cos(theta)))
        return v

    def peak(self, s: np.ndarray, offset: float = 0.0) -> np.ndarray:
        """Angle where ln g = offset, i.e. ln A = offset - s, clamped to the
        interval.  offset = 0 locates the integrand's peak (g = 1)."""
        lo = np.full_like(s, self.lo + self.inset)
        hi = np.full_like(s, self.hi - self.inset)
        target = offset - s
        for _ in range(52):
            mid = 0.5 * (lo + hi)
            v = self.ln_a(mid)
            v = np.where(np.isnan(v), np.inf if self.increasing else -np.inf, v)
            if self.increasing:
                below = v < target
            else:
                below = v > target
            lo = np.where(below, mid, lo)
            hi = np.where(below, hi, mid)
        return 0.5 * (lo + hi)


_GL15_U, _GL15_W = np.polynomial.legendre.leggauss(15)
_GL15_U = 0.5 * (1.0 + _GL15_U)
_GL15_W = 0.5 * _GL15_W


def _integrate_bump(kernel: _Kernel, s: np.ndarray, quad_rel: float = 1e-9) -> np.ndarray:
    """integral of g e^{-g} d(theta) for a batch of s values.

    The integrand is a single bump peaking where g = 1.  Its location and
    the angles where ln g crosses -16 and +4 become panel edges, so the
    bump can never hide between quadrature nodes, no matter how narrow it
    gets in the far tails."""
    theta_star = kernel.peak(s)
    wing_lo = kernel.peak(s, offset=-16.0)
    wing_hi = kernel.peak(s, offset=4.0)
    lo = np.full_like(s, kernel.lo + kernel.inset)
    hi = np.full_like(s, kernel.hi - kernel.inset)
    inner = np.sort(np.column_stack([wing_lo, theta_star, wing_hi]), axis=1)
    edges = [lo, inner[:, 0], inner[:, 1], inner[:, 2], hi]

    def h_on(u, a_vec, b_vec):
        theta = a_vec + u * (b_vec - a_vec)
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            lng = kernel.ln_a(theta) + s
            val = np.exp(lng - np.exp(lng)) * (b_vec - a_vec)
        return np.nan_to_num(val, nan=0.0, posinf=0.0, neginf=0.0)

    panels = [(np.minimum(a, b), np.maximum(a, b))
              for a, b in zip(edges[:-1], edges[1:])]
    # crude pass sets a per-point scale so that the adaptive pass controls
    # relative error uniformly across a batch spanning many decades
    crude = np.zeros_like(s)
    for a_vec, b_vec in panels:
        crude += sum(w * h_on(u, a_vec, b_vec) for u, w in zip(_GL15_U, _GL15_W))
    scale = 1.0 / np.maximum(crude, 1e-300)

    total = np.zeros_like(s)
    for a_vec, b_vec in panels:
        res, _ = quad_vec(lambda u: h_on(u, a_vec, b_vec) * scale, 0.0, 1.0,
                          epsabs=1e-14, epsrel=quad_rel, limit=120, norm="max")
        total += res
    return total / scale


def _ln_pdf_std(alpha: float, beta: float, z: np.ndarray,
                quad_rel: float = 1e-9) -> np.ndarray:
    """ln density of the standardized S0 stable law at points z."""
    z = np.asarray(z, dtype=float)
    if alpha == 2.0:
        return -0.25 * z * z - math.log(2.0 * math.sqrt(math.pi))
    if alpha == 1.0 and beta == 0.0:
        return -np.log(math.pi * (1.0 + z * z))

    out = np.full(z.shape, -np.inf)
    if alpha == 1.0:
        if beta > 0:
            out = _ln_bump_value(_Kernel(alpha, beta), z, quad_rel)
        else:
            out = _ln_bump_value(_Kernel(alpha, -beta), -z, quad_rel)
        return out

    zeta = _zeta(alpha, beta)
    near = np.abs(z - zeta) <= 1e-8 * (1.0 + abs(zeta))
    right = (z > zeta) & ~near
    left = (z < zeta) & ~near
    if near.any():
        t0 = math.atan(-zeta) / alpha
        ln_fzeta = (special.gammaln(1.0 + 1.0 / alpha) + math.log(math.cos(t0))
                    - math.log(math.pi) - math.log1p(zeta * zeta) / (2.0 * alpha))
        out[near] = ln_fzeta
    if right.any():
        out[right] = _ln_bump_value(_Kernel(alpha, beta), z[right], quad_rel)
    if left.any():
        out[left] = _ln_bump_value(_Kernel(alpha, -beta), -z[left], quad_rel)
    return out


def _ln_bump_value(kernel: _Kernel, z: np.ndarray, quad_rel: float = 1e-9) -> np.ndarray:
    if kernel.hi - kernel.lo < 1e-11:
        return np.full_like(z, -np.inf)
    s = kernel.s_of_z(z)
    integral = _integrate_bump(kernel, s, quad_rel)
    with np.errstate(divide="ignore"):
        return np.log(kernel.c2_of_z(z)) + np.log(np.maximum(integral, 0.0))


def _tail_coefficient(alpha: float) -> float:
    return math.sin(0.5 * math.pi * alpha) * math.gamma(alpha) / math.pi


def _left_tail_mass(alpha: float, beta: float, big: float) -> float:
    """P(Z < -big) from the power-tail asymptotic (standardized S0)."""
    if alpha == 1.0:
        return (1.0 - beta) / (math.pi * big)
    return _tail_coefficient(alpha) * (1.0 - beta) * big ** (-alpha)


class StableFamily:
    name = "S"
    param_names = ("alpha", "beta", "gamma", "delta")
    param_kinds = ("stable_alpha", "stable_beta", "scale", "loc")
    support = "real"

    def validate(self, params):
        alpha, beta, gamma, delta = params
        if not (0.0 < alpha <= 2.0):
            raise DomainError("stable alpha must lie in (0, 2]")
        if not (-1.0 <= beta <= 1.0):
            raise DomainError("stable beta must lie in [-1, 1]")
        if not (np.isfinite(gamma) and gamma > 0):
            raise DomainError("stable gamma must be positive")
        if not np.isfinite(delta):
            raise DomainError("stable delta must be finite")

    def log_pdf(self, params, x):
        alpha, beta, gamma, delta = params
        alpha = _snap(alpha)
        z = (np.asarray(x, dtype=float) - delta) / gamma
        return _ln_pdf_std(alpha, beta, z) - math.log(gamma)

    def bulk_log_pdf(self, params, x):
        x = np.asarray(x, dtype=float)
        if x.size <= _BULK_THRESHOLD:
            return self.log_pdf(params, x)
        alpha, beta, gamma, delta = params
        alpha = _snap(alpha)
        z = (x - delta) / gamma
        t = np.arcsinh(z)
        knots_t = np.linspace(t.min(), t.max(), _BULK_KNOTS)
        lnf_k = _ln_pdf_std(alpha, beta, np.sinh(knots_t), _BULK_QUAD_REL)
        spl = PchipInterpolator(knots_t, np.maximum(lnf_k, _LN_FLOOR), extrapolate=True)
        return spl(t) - math.log(gamma)

    def _std_pdf_interpolant(self, alpha, beta, z_lo, z_hi):
        knots = asinh_grid(z_lo, z_hi, 0.0, 1.0, 1600)
        lnf_k = np.maximum(_ln_pdf_std(alpha, beta, knots), _LN_FLOOR)
        spl = PchipInterpolator(np.arcsinh(knots), lnf_k, extrapolate=True)

        def pdf(zz):
            return np.exp(spl(np.arcsinh(np.asarray(zz, dtype=float))))

        return pdf

    def cdf(self, params, x):
        alpha, beta, gamma, delta = params
        alpha = _snap(alpha)
        x = np.asarray(x, dtype=float)
        z = (x - delta) / gamma
        if alpha == 2.0:
            return special.ndtr(z / math.sqrt(2.0))
        if alpha == 1.0 and beta == 0.0:
            return 0.5 + np.arctan(z) / math.pi
        big = max(1e8, 4.0 * float(np.max(np.abs(z), initial=1.0)))
        pdf_vec = self._std_pdf_interpolant(alpha, beta, -big, min(big, max(10.0, z.max() + 10.0)))
        # anchor the cumulative integration at the location parameter (z = 0)
        grid = asinh_grid(-big, 0.0, 0.0, 1.0, 801)
        ints, _ = adaptive_panel_integrals(pdf_vec, grid, 1e-11, max_depth=8)
        f_at_loc = _left_tail_mass(alpha, beta, big) + ints.sum()
        return cdf_by_panels(pdf_vec, z, anchor=0.0, anchor_cdf=f_at_loc, scale=1.0)

    def sample(self, params, n, rng):
        alpha, beta, gamma, delta = params
        alpha = _snap(alpha)
        theta = rng.uniform(-0.5 * math.pi, 0.5 * math.pi, n)
        w = rng.exponential(1.0, n)
        if alpha != 1.0:
            ta = math.tan(0.5 * math.pi * alpha)
            b0 = math.atan(beta * ta) / alpha
            s0 = (1.0 + beta * beta * ta * ta) ** (0.5 / alpha)
            zs = (s0 * np.sin(alpha * (theta + b0)) / np.cos(theta) ** (1.0 / alpha)
                  * (np.cos(theta - alpha * (theta + b0)) / w) ** ((1.0 - alpha) / alpha))
            return gamma * zs + delta - beta * gamma * ta
        hp = 0.5 * math.pi
        zs = (2.0 / math.pi) * ((hp + beta * theta) * np.tan(theta)
                                - beta * np.log((hp * w * np.cos(theta)) / (hp + beta * theta)))
        return gamma * zs + delta

    def exponents(self, params):
        alpha = params[0]
        return ExponentReport(front_exponent=None, tail_exponent=-(alpha + 1.0))
