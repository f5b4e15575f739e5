"""Jit-compiled loop implementations of the hot kernels.

Signature-for-signature twins of ``numpy_impl``; see that module for the
shared index conventions.  Compiled lazily on first call, cached on disk.
"""

import numpy as np
from numba import njit

SCHEME_ECONS = 0
SCHEME_RUSANOV = 1
SCHEME_FIXED_D = 2

DEGENERATE_REL_EPS = 1e-12


@njit(cache=True)
def monitor_weights(x, u, alpha):
    n = u.shape[0]
    xc = 0.5 * (x[:-1] + x[1:])
    eps = 2.3e-16 * (x[-1] - x[0])
    d2 = np.zeros(n)
    for i in range(1, n - 1):
        sl = (u[i] - u[i - 1]) / max(xc[i] - xc[i - 1], eps)
        sr = (u[i + 1] - u[i]) / max(xc[i + 1] - xc[i], eps)
        d2[i] = 2.0 * (sr - sl) / max(xc[i + 1] - xc[i - 1], eps)
    w = np.empty(n + 1)
    kmax = 0.0
    for j in range(n + 1):
        if j <= 1:
            kappa = d2[1]
        elif j >= n - 1:
            kappa = d2[n - 2]
        else:
            kappa = 0.5 * (d2[j - 1] + d2[j])
        w[j] = abs(kappa)
        if w[j] > kmax:
            kmax = w[j]
    for j in range(n + 1):
        w[j] = 1.0 + alpha * (w[j] / kmax if kmax > 0.0 else 0.0)
    return w


@njit(cache=True)
def smooth_weights(w, passes):
    m = w.shape[0]
    out = w.copy()
    buf = np.empty(m)
    for _ in range(passes):
        for j in range(m):
            left = out[j - 1] if j > 0 else out[m - 1]
            right = out[j + 1] if j < m - 1 else out[0]
            buf[j] = 0.25 * (left + 2.0 * out[j] + right)
        out, buf = buf, out
    return out.copy()


@njit(cache=True)
def equidistribute(x, w):
    n = x.shape[0] - 1
    cum = np.empty(n + 1)
    cum[0] = 0.0
    for i in range(n):
        rho = 0.5 * (w[i] + w[i + 1])
        cum[i + 1] = cum[i] + rho * (x[i + 1] - x[i])
    out = x.copy()
    total = cum[n]
    seg = 0
    for j in range(1, n):
        target = total * (j / n)
        while seg < n - 1 and cum[seg + 1] < target:
            seg += 1
        den = cum[seg + 1] - cum[seg]
        frac = (target - cum[seg]) / den if den > 0.0 else 0.0
        out[j] = x[seg] + frac * (x[seg + 1] - x[seg])
    return out


@njit(cache=True)
def cap_displacements(x_old, x_cand, beta):
    n = x_old.shape[0] - 1
    out = x_old.copy()
    for j in range(1, n):
        hl = x_old[j] - x_old[j - 1]
        hr = x_old[j + 1] - x_old[j]
        cap = beta * min(hl, hr)
        delta = x_cand[j] - x_old[j]
        if delta > cap:
            delta = cap
        elif delta < -cap:
            delta = -cap
        out[j] = x_old[j] + delta
    return out


@njit(cache=True)
def remap_field(x_old, x_new, u):
    n = u.shape[0]
    out = np.empty(n)
    for i in range(n):
        h_old = x_old[i + 1] - x_old[i]
        h_new = x_new[i + 1] - x_new[i]
        d_r = x_new[i + 1] - x_old[i + 1]
        d_l = x_new[i] - x_old[i]
        dp_r = max(d_r, 0.0)
        dm_r = max(-d_r, 0.0)
        dp_l = max(d_l, 0.0)
        dm_l = max(-d_l, 0.0)
        u_left = u[i - 1] if i > 0 else u[n - 1]
        u_right = u[i + 1] if i < n - 1 else u[0]
        mass = (h_old * u[i] - dm_r * u[i] + dp_r * u_right
                + dm_l * u_left - dp_l * u[i])
        out[i] = mass / h_new
    return out


@njit(cache=True)
def h_terms(d, h_old, v):
    n = v.shape[0]
    out = np.empty(n + 1)
    for j in range(n + 1):
        il = j - 1 if j > 0 else n - 1
        ir = j if j < n else 0
        dp = max(d[j], 0.0)
        dm = max(-d[j], 0.0)
        out[j] = (dm / h_old[il]) * v[il] - (dp / h_old[ir]) * v[ir]
    return out


@njit(cache=True)
def interface_coeffs(vl, vr, fl, fr, dfl, dfr, psil, psir, fstar, scheme, d_const):
    m = vl.shape[0]
    jump = np.empty(m)
    secant = np.empty(m)
    visc_econs = np.empty(m)
    visc_extra = np.empty(m)
    visc = np.empty(m)
    flux = np.empty(m)
    ent_flux = np.empty(m)
    for j in range(m):
        dv = vr[j] - vl[j]
        jump[j] = dv
        scale = max(1.0, max(abs(vl[j]), abs(vr[j])))
        if abs(dv) < DEGENERATE_REL_EPS * scale:
            b = dfl[j]
            qstar = 0.0
        else:
            b = (fr[j] - fl[j]) / dv
            qstar = (fl[j] + fr[j] - 2.0 * fstar[j]) / dv
        secant[j] = b
        visc_econs[j] = qstar
        if scheme == SCHEME_ECONS:
            dd = 0.0
        elif scheme == SCHEME_RUSANOV:
            dd = max(0.0, max(abs(dfl[j]), abs(dfr[j])) - qstar)
        else:
            dd = d_const
        visc_extra[j] = dd
        q = qstar + dd
        visc[j] = q
        f = 0.5 * (fl[j] + fr[j]) - 0.5 * q * dv
        flux[j] = f
        ent_flux[j] = 0.5 * (vl[j] + vr[j]) * f - 0.5 * (psil[j] + psir[j])
    return jump, secant, visc_econs, visc_extra, visc, flux, ent_flux


@njit(cache=True)
def nonuniform_update(u_hat, h_new, flux, dt):
    n = u_hat.shape[0]
    out = np.empty(n)
    for i in range(n):
        out[i] = u_hat[i] - (dt / h_new[i]) * (flux[i + 1] - flux[i])
    return out


@njit(cache=True)
def combined_update(v, h_iface, flux, dt, dx):
    n = v.shape[0]
    out = np.empty(n)
    lam = dt / dx
    for i in range(n):
        out[i] = (v[i] + (h_iface[i] - h_iface[i + 1])
                  - lam * (flux[i + 1] - flux[i]))
    return out


@njit(cache=True)
def movement_bound_terms(jump, secant, visc_econs, visc_extra, dt, dx, k):
    n = jump.shape[0] - 1
    k3 = k * k * k
    lam = dt / dx
    bound = np.empty(n)
    e_x = np.empty(n)
    e_fe = np.empty(n)
    for i in range(n):
        jl2 = jump[i] * jump[i]
        jr2 = jump[i + 1] * jump[i + 1]
        plus = (secant[i] + visc_econs[i] + visc_extra[i]) ** 2
        minus = (secant[i + 1] - visc_econs[i + 1] - visc_extra[i + 1]) ** 2
        bound[i] = 0.25 * lam * ((visc_extra[i] - k3 * lam * plus) * jl2
                                 + (visc_extra[i + 1] - k3 * lam * minus) * jr2)
        e_x[i] = 0.25 * (visc_extra[i] * jl2 + visc_extra[i + 1] * jr2)
        e_fe[i] = 0.25 * k3 * lam * lam * (minus * jr2 + plus * jl2)
    return bound, e_x, e_fe
