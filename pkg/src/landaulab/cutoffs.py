"""Smooth radial cutoffs: beta = 1 on the unit disk, 0 outside radius 2.

The radial profile is the standard exp(-1/t) glue, so beta is C^infinity,
radially non-increasing, and 0 <= beta <= 1. The wide variant
beta_tilde(x) = beta(x/2) equals 1 on the support of beta. Derivative sup
norms are measured once on a fine one-dimensional reference mesh.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .grid import Grid, GridFunction


def smooth_step(t):
    """1 for t <= 0, 0 for t >= 1, exp(-1/t)-glued in between."""
    t = np.asarray(t, dtype=float)
    out = np.zeros_like(t)
    out[t <= 0.0] = 1.0
    mid = (t > 0.0) & (t < 1.0)
    tm = t[mid]
    with np.errstate(over="ignore"):
        fa = np.exp(-1.0 / (1.0 - tm))
        fb = np.exp(-1.0 / tm)
    out[mid] = fa / (fa + fb)
    return out


def bump_profile(r):
    """psi(r): 1 for r <= 1, 0 for r >= 2, smooth and non-increasing."""
    return smooth_step(np.asarray(r, dtype=float) - 1.0)


def _profile_sups(profile, samples: int = 400001):
    r = np.linspace(0.5, 2.5, samples)
    dr = r[1] - r[0]
    psi = profile(r)
    dpsi = np.gradient(psi, dr)
    d2psi = np.gradient(dpsi, dr)
    sup_grad = float(np.abs(dpsi).max())
    sup_lap = float(np.abs(d2psi + dpsi / r).max())
    return sup_grad, sup_lap


@lru_cache(maxsize=1)
def profile_sup_norms(samples: int = 400001):
    """(sup |psi'|, sup |Delta beta|) for the shipped bump, measured on a
    fine 1-d mesh. |grad beta| = |psi'(r)| and Delta beta = psi'' + psi'/r;
    both extremes live in 1 <= r <= 2."""
    return _profile_sups(bump_profile, samples)


@dataclass
class Cutoff:
    center: tuple
    beta: GridFunction        # beta_q on the grid
    beta_tilde: GridFunction  # beta_tilde_q = beta((x - q)/2)
    sup_d1: float             # sup |D1 beta| = sup |d1 beta|
    sup_d2: float
    sup_lap: float            # sup |Delta beta|


def make_cutoff(q, grid: Grid, profile=None) -> Cutoff:
    """Cutoff centered at q; an alternative admissible radial profile (1 on
    r<=1, 0 on r>=2) may be supplied, e.g. bump_profile squared."""
    X1, X2 = grid.mesh()
    r = np.sqrt((X1 - q[0]) ** 2 + (X2 - q[1]) ** 2)
    if profile is None:
        beta = bump_profile(r)
        beta_t = bump_profile(r / 2.0)
        sup_grad, sup_lap = profile_sup_norms()
    else:
        beta = profile(r)
        beta_t = profile(r / 2.0)
        sup_grad, sup_lap = _profile_sups(profile)
    # |d_j beta| = |psi'(r)| |x_j - q_j| / r <= |psi'(r)|, attained on the axis
    return Cutoff(center=(float(q[0]), float(q[1])),
                  beta=GridFunction(beta.astype(complex).reshape(-1), grid),
                  beta_tilde=GridFunction(beta_t.astype(complex).reshape(-1), grid),
                  sup_d1=sup_grad, sup_d2=sup_grad, sup_lap=sup_lap)


def lattice_window(grid: Grid, margin: float = 2.0):
    """Integer lattice points q with dist(q, boundary) >= margin."""
    reach = int(np.floor(grid.extent_L - margin))
    pts = []
    for q1 in range(-reach, reach + 1):
        for q2 in range(-reach, reach + 1):
            pts.append((float(q1), float(q2)))
    return pts


def overlap_sup_factors(grid: Grid, margin: float = 2.0):
    """Finite-overlap factors for the summed cutoff inequality:
    sup-norms of sum_q |Delta beta_q|^2 and sum_q |d_j beta_q|^2 over the
    integer-lattice window, computed from the actual bump."""
    X1, X2 = grid.mesh()
    s_lap = np.zeros_like(X1)
    s_d1 = np.zeros_like(X1)
    s_d2 = np.zeros_like(X1)
    eps = 1e-9
    for q in lattice_window(grid, margin):
        r = np.sqrt((X1 - q[0]) ** 2 + (X2 - q[1]) ** 2)
        rr = np.maximum(r, eps)
        dr = 1e-6
        dpsi = (bump_profile(rr + dr) - bump_profile(rr - dr)) / (2 * dr)
        d2psi = (bump_profile(rr + dr) - 2 * bump_profile(rr) + bump_profile(rr - dr)) / dr**2
        lap = d2psi + dpsi / rr
        s_lap += lap**2
        s_d1 += (dpsi * (X1 - q[0]) / rr) ** 2
        s_d2 += (dpsi * (X2 - q[1]) / rr) ** 2
    return (float(np.sqrt(s_lap.max())), float(np.sqrt(s_d1.max())),
            float(np.sqrt(s_d2.max())))
