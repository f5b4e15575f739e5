"""Vectorized numpy implementations of the hot per-cell/per-interface kernels.

These are the fallback twins of the jit-compiled versions in
``numba_impl``; both expose identical signatures and semantics.  Index
conventions shared by every kernel:

- ``N`` cells ``i = 0..N-1`` are bounded by ``N+1`` interfaces
  ``j = 0..N``; interface ``j`` separates cell ``j-1`` (left) from cell
  ``j`` (right), with periodic wraparound of the cell index.
- Per-interface arrays have length ``N+1``; entries ``0`` and ``N``
  describe the same periodic boundary interface.
"""

import numpy as np

SCHEME_ECONS = 0
SCHEME_RUSANOV = 1
SCHEME_FIXED_D = 2

# Relative jump size below which difference quotients switch to their
# pointwise limits (avoids catastrophic cancellation near constant states).
DEGENERATE_REL_EPS = 1e-12


def monitor_weights(x, u, alpha):
    """Curvature weights w_j = 1 + alpha*|kappa_j| at every interface.

    kappa at an interface is the mean of the two adjacent-cell second
    divided differences of the cell-center data (one-sided at the ends of
    the domain, where the stencil is clamped to the nearest full one).
    Center distances are floored at one ulp of the domain length: extreme
    intermediate equidistribution candidates can collapse neighboring
    midpoints in floating point.
    """
    n = u.shape[0]
    xc = 0.5 * (x[:-1] + x[1:])
    eps = 2.3e-16 * (x[-1] - x[0])
    d1 = np.maximum(xc[1:] - xc[:-1], eps)
    d2 = np.zeros(n)
    sl = (u[1:-1] - u[:-2]) / d1[:-1]
    sr = (u[2:] - u[1:-1]) / d1[1:]
    d2[1:-1] = 2.0 * (sr - sl) / np.maximum(xc[2:] - xc[:-2], eps)

    kappa = np.empty(n + 1)
    kappa[2:-2] = 0.5 * (d2[1:-2] + d2[2:-1])
    kappa[0] = kappa[1] = d2[1]
    kappa[-1] = kappa[-2] = d2[n - 2]
    # normalize by the current maximum: bounds the density ratio at 1+alpha,
    # so repeated reconstruction cannot collapse cells without limit
    kmax = np.max(np.abs(kappa))
    if kmax > 0.0:
        kappa = kappa / kmax
    return 1.0 + alpha * np.abs(kappa)


def smooth_weights(w, passes):
    """Three-point weighted averaging, periodic over the full array."""
    out = w.copy()
    for _ in range(passes):
        out = 0.25 * (np.roll(out, 1) + 2.0 * out + np.roll(out, -1))
    return out


def equidistribute(x, w):
    """Place interfaces so each cell carries an equal share of the monitor.

    The density on cell i is the mean of its two interface weights, so the
    cumulative monitor is piecewise linear in x and is inverted exactly.
    Endpoints stay fixed.
    """
    n = x.shape[0] - 1
    rho = 0.5 * (w[:-1] + w[1:])
    cum = np.empty(n + 1)
    cum[0] = 0.0
    np.cumsum(rho * (x[1:] - x[:-1]), out=cum[1:])
    targets = cum[-1] * (np.arange(1, n) / n)
    out = x.copy()
    out[1:-1] = np.interp(targets, cum, x)
    return out


def cap_displacements(x_old, x_cand, beta):
    """Clip interior interface moves to beta*min(neighbor widths)."""
    h = x_old[1:] - x_old[:-1]
    cap = beta * np.minimum(h[:-1], h[1:])
    out = x_old.copy()
    delta = np.clip(x_cand[1:-1] - x_old[1:-1], -cap, cap)
    out[1:-1] = x_old[1:-1] + delta
    return out


def remap_field(x_old, x_new, u):
    """Conservative piecewise-constant transfer of u onto the moved mesh.

    Valid only while every interface stays strictly inside its old
    neighbor cells (the caller checks), so each new cell overlaps at most
    itself and its immediate neighbors.
    """
    n = u.shape[0]
    h_old = x_old[1:] - x_old[:-1]
    h_new = x_new[1:] - x_new[:-1]
    d = x_new - x_old
    dp = np.maximum(d, 0.0)
    dm = np.maximum(-d, 0.0)
    u_left = np.roll(u, 1)
    u_right = np.roll(u, -1)
    mass = (h_old * u - dm[1:] * u + dp[1:] * u_right
            + dm[:-1] * u_left - dp[:-1] * u)
    return mass / h_new


def h_terms(d, h_old, v):
    """Per-interface mass-exchange terms in reference variables."""
    n = v.shape[0]
    dp = np.maximum(d, 0.0)
    dm = np.maximum(-d, 0.0)
    v_l = np.empty(n + 1)
    v_l[1:] = v
    v_l[0] = v[-1]
    v_r = np.empty(n + 1)
    v_r[:-1] = v
    v_r[-1] = v[0]
    h_l = np.empty(n + 1)
    h_l[1:] = h_old
    h_l[0] = h_old[-1]
    h_r = np.empty(n + 1)
    h_r[:-1] = h_old
    h_r[-1] = h_old[0]
    return (dm / h_l) * v_l - (dp / h_r) * v_r


def interface_coeffs(vl, vr, fl, fr, dfl, dfr, psil, psir, fstar, scheme, d_const):
    """Jump, secant slope, viscosities, numerical flux and entropy flux.

    fstar is the entropy-conservative flux value, precomputed in its
    cancellation-free form.  The remaining difference quotients take their
    pointwise limits when the jump is below DEGENERATE_REL_EPS relative to
    the state magnitude.
    """
    jump = vr - vl
    scale = np.maximum(1.0, np.maximum(np.abs(vl), np.abs(vr)))
    tiny = np.abs(jump) < DEGENERATE_REL_EPS * scale
    safe = np.where(tiny, 1.0, jump)

    secant = np.where(tiny, dfl, (fr - fl) / safe)
    visc_econs = np.where(tiny, 0.0, (fl + fr - 2.0 * fstar) / safe)

    if scheme == SCHEME_ECONS:
        visc_extra = np.zeros_like(jump)
    elif scheme == SCHEME_RUSANOV:
        visc_extra = np.maximum(0.0, np.maximum(np.abs(dfl), np.abs(dfr)) - visc_econs)
    else:
        visc_extra = np.full_like(jump, d_const)

    visc = visc_econs + visc_extra
    flux = 0.5 * (fl + fr) - 0.5 * visc * jump
    ent_flux = 0.5 * (vl + vr) * flux - 0.5 * (psil + psir)
    return jump, secant, visc_econs, visc_extra, visc, flux, ent_flux


def nonuniform_update(u_hat, h_new, flux, dt):
    """Explicit finite-volume update over the (possibly moved) mesh."""
    return u_hat - (dt / h_new) * (flux[1:] - flux[:-1])


def combined_update(v, h_iface, flux, dt, dx):
    """Single conservative update over the uniform reference mesh.

    Equals v - (dt/dx)*[(dx/dt)H + F] differenced across the cell, written
    so dt = 0 degenerates to the pure remap.
    """
    return (v + (h_iface[:-1] - h_iface[1:])
            - (dt / dx) * (flux[1:] - flux[:-1]))


def movement_bound_terms(jump, secant, visc_econs, visc_extra, dt, dx, k):
    """Per-cell bound on the mesh entropy term plus its two building blocks.

    Returns (bound, e_x, e_fe_bound) where bound == (dt/dx)*e_x - e_fe_bound
    up to regrouping; each is evaluated from its own formula.
    """
    k3 = k * k * k
    lam = dt / dx
    plus = (secant + visc_econs + visc_extra) ** 2
    minus = (secant - visc_econs - visc_extra) ** 2
    j2 = jump * jump

    b_l = (visc_extra[:-1] - k3 * lam * plus[:-1]) * j2[:-1]
    b_r = (visc_extra[1:] - k3 * lam * minus[1:]) * j2[1:]
    bound = 0.25 * lam * (b_l + b_r)

    e_x = 0.25 * (visc_extra[:-1] * j2[:-1] + visc_extra[1:] * j2[1:])
    e_fe = 0.25 * k3 * lam * lam * (minus[1:] * j2[1:] + plus[:-1] * j2[:-1])
    return bound, e_x, e_fe
