"""Panel quadrature helpers for densities that lack closed-form CDFs.

The stable and Tricomi-based families get their CDFs by integrating the
density.  Small query batches are resolved exactly with adaptively
refined Gauss-Kronrod panels whose edges include the query points; large
batches (KS statistics on 1e5 samples) go through a dense grid plus a
monotone cubic interpolant, which is orders of magnitude cheaper and
still accurate to ~1e-8 in CDF units.
"""

from __future__ import annotations

import numpy as np
from scipy.interpolate import PchipInterpolator

from ..errors import NumericalError

# 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
# (QUADPACK dqk15 constants).
_XK = np.array([
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0, 0.207784955007898, 0.405845151377397,
    0.586087235467691, 0.741531185599394, 0.864864423359769,
    0.949107912342759, 0.991455371120813,
])
_WK = np.array([
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529,
])
_WG = np.zeros(15)
_WG[1::2] = [0.129484966168870, 0.279705391489277, 0.381830050505119,
             0.417959183673469, 0.381830050505119, 0.279705391489277,
             0.129484966168870]


def gk_integrals(pdf_vec, lo: np.ndarray, hi: np.ndarray):
    """Kronrod integral and error estimate over each interval [lo_i, hi_i].

    ``pdf_vec`` must accept a flat array of abscissae; all intervals are
    evaluated in a single vectorized call.
    """
    half = 0.5 * (hi - lo)
    mid = 0.5 * (lo + hi)
    pts = mid[:, None] + half[:, None] * _XK[None, :]
    fv = pdf_vec(pts.ravel()).reshape(pts.shape)
    ik = (fv * _WK).sum(axis=1) * half
    ig = (fv * _WG).sum(axis=1) * half
    return ik, np.abs(ik - ig)


def adaptive_panel_integrals(pdf_vec, edges: np.ndarray, tol: float, max_depth: int = 14):
    """Integral of the pdf over each panel of ``edges``, refined by bisection
    until the total Kronrod error estimate drops below ``tol``."""
    lo = edges[:-1].astype(float)
    hi = edges[1:].astype(float)
    owner = np.arange(lo.size)
    ints, errs = gk_integrals(pdf_vec, lo, hi)
    for _ in range(max_depth):
        if errs.sum() <= tol:
            break
        thresh = tol / (2.0 * lo.size)
        bad = errs > thresh
        if not bad.any():
            break
        mid = 0.5 * (lo[bad] + hi[bad])
        nlo = np.concatenate([lo[bad], mid])
        nhi = np.concatenate([mid, hi[bad]])
        nown = np.concatenate([owner[bad], owner[bad]])
        nints, nerrs = gk_integrals(pdf_vec, nlo, nhi)
        lo = np.concatenate([lo[~bad], nlo])
        hi = np.concatenate([hi[~bad], nhi])
        owner = np.concatenate([owner[~bad], nown])
        ints = np.concatenate([ints[~bad], nints])
        errs = np.concatenate([errs[~bad], nerrs])
    out = np.zeros(edges.size - 1)
    err_out = np.zeros(edges.size - 1)
    np.add.at(out, owner, ints)
    np.add.at(err_out, owner, errs)
    return out, err_out


def asinh_grid(lo: float, hi: float, center: float, scale: float, n: int) -> np.ndarray:
    """Monotone grid on [lo, hi] with knots concentrated around ``center``."""
    a0 = np.arcsinh((lo - center) / scale)
    a1 = np.arcsinh((hi - center) / scale)
    g = center + scale * np.sinh(np.linspace(a0, a1, n))
    g[0], g[-1] = lo, hi
    return np.unique(g)


def cdf_by_panels(pdf_vec, x: np.ndarray, anchor: float, anchor_cdf: float,
                  scale: float, exact_limit: int = 256, grid_size: int = 2049,
                  tol: float = 1e-10) -> np.ndarray:
    """CDF at ``x`` by integrating ``pdf_vec`` away from an anchor point whose
    CDF value is known.

    The exact path (small batches) makes the query points panel edges so no
    interpolation error enters; the grid path evaluates on an asinh-spaced
    grid and interpolates with a monotone cubic.  Results clip to [0, 1].
    """
    x = np.asarray(x, dtype=float)
    if x.size == 0:
        return x.copy()
    xs = np.unique(x)
    lo = min(xs[0], anchor)
    hi = max(xs[-1], anchor)

    if xs.size <= exact_limit:
        knots = np.unique(np.concatenate([
            xs, [anchor], asinh_grid(lo, hi, anchor, scale, 129)]))
        ints, err = adaptive_panel_integrals(pdf_vec, knots, tol)
        if err.sum() > 1e-6:
            raise NumericalError(
                f"cdf panel integration error {err.sum():.2e} exceeds tolerance")
        cum = np.concatenate([[0.0], np.cumsum(ints)])
        k = np.searchsorted(knots, anchor)
        fvals = anchor_cdf + (cum - cum[k])
        lookup = np.searchsorted(knots, x)
        return np.clip(fvals[lookup], 0.0, 1.0)

    pad = 1e-9 * scale
    grid = asinh_grid(lo - pad, hi + pad, anchor, scale, grid_size)
    grid = np.unique(np.concatenate([grid, [anchor]]))
    ints, _ = adaptive_panel_integrals(pdf_vec, grid, tol, max_depth=6)
    cum = np.concatenate([[0.0], np.cumsum(ints)])
    k = np.searchsorted(grid, anchor)
    fvals = anchor_cdf + (cum - cum[k])
    interp = PchipInterpolator(grid, np.maximum.accumulate(fvals), extrapolate=False)
    out = interp(np.clip(x, grid[0], grid[-1]))
    return np.clip(out, 0.0, 1.0)
