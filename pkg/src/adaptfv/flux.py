"""Problem definitions (flux + quadratic entropy pair) and interface
coefficient computation.

The entropy machinery is specialized to U(u) = u^2/2, for which the entropy
variable is u itself, the entropy potential is psi = u*f(u) - g(u), and the
scalar entropy-conservative flux is the difference quotient of psi.  Writing
any numerical flux F = (f_l + f_r)/2 - Q/2 * jump defines its viscosity Q;
the entropy-conservative flux has viscosity Q*, and D = Q - Q* >= 0 is the
extra, entropy-dissipating part.
"""

from dataclasses import dataclass
from typing import Callable
import warnings

import numpy as np

from . import kernels

SCHEMES = ("econs", "rusanov", "fixed-d")

_SCHEME_CODES = {
    "econs": kernels.SCHEME_ECONS,
    "rusanov": kernels.SCHEME_RUSANOV,
    "fixed-d": kernels.SCHEME_FIXED_D,
}


def scheme_code(scheme: str) -> int:
    try:
        return _SCHEME_CODES[scheme]
    except KeyError:
        raise ValueError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}") from None


@dataclass(frozen=True)
class Problem:
    """Scalar conservation law with the quadratic entropy pair.

    f, df, g, psi are vectorized callables; ``fmean(vl, vr)`` is the mean
    of f over the state interval, which equals the difference quotient of
    psi but stays cancellation-free as the interval shrinks (it is the
    entropy-conservative flux away from the degenerate limit).
    ``hessian_bound`` is the positive constant (cubed in the stability
    analysis) bounding the entropy Hessian scale -- exactly 1 for the
    quadratic entropy, kept configurable.
    """

    name: str
    f: Callable[[np.ndarray], np.ndarray]
    df: Callable[[np.ndarray], np.ndarray]
    g: Callable[[np.ndarray], np.ndarray]
    psi: Callable[[np.ndarray], np.ndarray]
    fmean: Callable[[np.ndarray, np.ndarray], np.ndarray]
    hessian_bound: float = 1.0

    def __post_init__(self):
        if not np.isfinite(self.hessian_bound) or self.hessian_bound <= 0.0:
            raise ValueError("hessian_bound must be finite and > 0")

    @staticmethod
    def entropy(u):
        return 0.5 * np.asarray(u) ** 2

    @staticmethod
    def entropy_vars(u):
        return np.asarray(u)

    def check_consistency(self, samples, rtol=1e-6):
        """Spot-check g' = u*f' and psi' = f by central differences."""
        s = np.asarray(samples, dtype=np.float64)
        eps = 1e-6 * np.maximum(1.0, np.abs(s))
        dg = (self.g(s + eps) - self.g(s - eps)) / (2.0 * eps)
        dpsi = (self.psi(s + eps) - self.psi(s - eps)) / (2.0 * eps)
        scale = np.maximum(1.0, np.abs(s) ** 2)
        if np.any(np.abs(dg - s * self.df(s)) > rtol * scale):
            raise ValueError(f"problem {self.name!r}: entropy flux is inconsistent with f")
        if np.any(np.abs(dpsi - self.f(s)) > rtol * scale):
            raise ValueError(f"problem {self.name!r}: entropy potential is inconsistent with f")


def burgers() -> Problem:
    return Problem(
        name="burgers",
        f=lambda u: 0.5 * u * u,
        df=lambda u: np.asarray(u, dtype=np.float64) + 0.0,
        g=lambda u: u**3 / 3.0,
        psi=lambda u: u**3 / 6.0,
        fmean=lambda vl, vr: (vl * vl + vl * vr + vr * vr) / 6.0,
    )


def advection(speed: float = 1.0) -> Problem:
    a = float(speed)
    return Problem(
        name=f"advection(a={a:g})",
        f=lambda u: a * u,
        df=lambda u: np.full_like(np.asarray(u, dtype=np.float64), a),
        g=lambda u: 0.5 * a * u * u,
        psi=lambda u: 0.5 * a * u * u,
        fmean=lambda vl, vr: 0.5 * a * (vl + vr),
    )


def _gauss_mean(f, quad_points):
    nodes, wts = np.polynomial.legendre.leggauss(quad_points)
    half_wts = 0.5 * wts

    def fmean(vl, vr, _f=f, _n=nodes, _w=half_wts):
        vl = np.atleast_1d(np.asarray(vl, dtype=np.float64))
        vr = np.atleast_1d(np.asarray(vr, dtype=np.float64))
        mid = 0.5 * (vl + vr)
        half = 0.5 * (vr - vl)
        pts = mid[:, None] + half[:, None] * _n[None, :]
        return (_f(pts) * _w[None, :]).sum(axis=1)

    return fmean


def custom_problem(name, f, df, psi=None, g=None, hessian_bound=1.0, quad_points=32) -> Problem:
    """Build a Problem from a user flux.

    With the quadratic entropy psi is the antiderivative of f; when not
    supplied it (and the interval mean of f) is evaluated by fixed
    Gauss-Legendre quadrature, so f must be smooth, and g = u*f(u) - psi(u).
    """
    if psi is None:
        nodes, wts = np.polynomial.legendre.leggauss(quad_points)

        def psi(u, _f=f, _n=nodes, _w=wts):
            u = np.asarray(u, dtype=np.float64)
            scalar = u.ndim == 0
            uu = np.atleast_1d(u)
            half = 0.5 * uu
            pts = half[:, None] * (_n[None, :] + 1.0)
            out = half * (_f(pts) * _w[None, :]).sum(axis=1)
            return out[0] if scalar else out

    if g is None:
        def g(u, _f=f, _psi=psi):
            u = np.asarray(u, dtype=np.float64)
            return u * _f(u) - _psi(u)

    return Problem(name=name, f=f, df=df, g=g, psi=psi,
                   fmean=_gauss_mean(f, quad_points),
                   hessian_bound=hessian_bound)


def entropy_conservative_flux(problem: Problem, vl, vr):
    """Difference quotient of the entropy potential, evaluated in its
    cancellation-free form as the mean of f over [vl, vr] (pointwise limit
    f(vl) below the degenerate-jump threshold)."""
    vl = np.asarray(vl, dtype=np.float64)
    vr = np.asarray(vr, dtype=np.float64)
    if not (np.all(np.isfinite(vl)) and np.all(np.isfinite(vr))):
        raise ValueError("states must be finite")
    scalar = vl.ndim == 0 and vr.ndim == 0
    vl, vr = np.atleast_1d(vl), np.atleast_1d(vr)
    jump = vr - vl
    scale = np.maximum(1.0, np.maximum(np.abs(vl), np.abs(vr)))
    tiny = np.abs(jump) < kernels.DEGENERATE_REL_EPS * scale
    out = np.where(tiny, problem.f(vl), problem.fmean(vl, vr))
    return float(out[0]) if scalar else out


@dataclass(frozen=True)
class InterfaceCoeffs:
    """Per-interface jump, secant slope, viscosities, fluxes.

    ``visc == visc_econs + visc_extra`` by construction; ``flux`` is the
    numerical flux in viscosity form and ``ent_flux`` the matching
    numerical entropy flux.
    """

    jump: np.ndarray
    secant: np.ndarray
    visc_econs: np.ndarray
    visc_extra: np.ndarray
    visc: np.ndarray
    flux: np.ndarray
    ent_flux: np.ndarray

    def __len__(self):
        return self.jump.shape[0]


def interface_coeffs(problem: Problem, vl, vr, scheme: str = "econs",
                     d_const: float = 0.0) -> InterfaceCoeffs:
    """Coefficients for the interfaces defined by state pairs (vl, vr).

    scheme picks the extra viscosity: "econs" adds none, "rusanov" raises
    the total viscosity to max(|f'(vl)|, |f'(vr)|), "fixed-d" adds the
    constant d_const >= 0.
    """
    code = scheme_code(scheme)
    if scheme == "fixed-d" and (not np.isfinite(d_const) or d_const < 0.0):
        raise ValueError("fixed-d scheme needs a finite d_const >= 0")
    vl = np.atleast_1d(np.asarray(vl, dtype=np.float64))
    vr = np.atleast_1d(np.asarray(vr, dtype=np.float64))
    if vl.shape != vr.shape or vl.ndim != 1:
        raise ValueError("vl and vr must be 1D arrays of equal length")
    if not (np.all(np.isfinite(vl)) and np.all(np.isfinite(vr))):
        raise ValueError("states must be finite")
    fl = np.asarray(problem.f(vl), dtype=np.float64)
    fr = np.asarray(problem.f(vr), dtype=np.float64)
    dfl = np.asarray(problem.df(vl), dtype=np.float64)
    dfr = np.asarray(problem.df(vr), dtype=np.float64)
    psil = np.asarray(problem.psi(vl), dtype=np.float64)
    psir = np.asarray(problem.psi(vr), dtype=np.float64)
    fstar = np.asarray(problem.fmean(vl, vr), dtype=np.float64)
    parts = kernels.interface_coeffs(vl, vr, fl, fr, dfl, dfr, psil, psir,
                                     fstar, code, float(d_const))
    coeffs = InterfaceCoeffs(*parts)
    if scheme == "rusanov":
        clamped = np.flatnonzero(
            np.maximum(np.abs(dfl), np.abs(dfr)) < coeffs.visc_econs
        )
        if clamped.size:
            warnings.warn(
                "rusanov viscosity fell below the entropy-conservative one at "
                f"{clamped.size} interface(s); extra dissipation clamped to 0",
                RuntimeWarning,
                stacklevel=2,
            )
    return coeffs


def periodic_coeffs(problem: Problem, v, scheme: str = "econs",
                    d_const: float = 0.0) -> InterfaceCoeffs:
    """Coefficients at all N+1 interfaces of a periodic cell array.

    Interface j pairs cells j-1 and j; entries 0 and N repeat the periodic
    boundary interface.
    """
    v = np.asarray(v, dtype=np.float64)
    vl = np.concatenate(([v[-1]], v))
    vr = np.concatenate((v, [v[0]]))
    return interface_coeffs(problem, vl, vr, scheme, d_const)


def cfl_max_dt(problem: Problem, coeffs: InterfaceCoeffs, dx: float,
               visc_floor: float = 1e-12, running_max: float = 0.0) -> float:
    """Largest stable dt from the entropy-feasibility restriction.

    dt_max = dx / (4 K^3 Qmax) with Qmax the max entropy-conservative
    viscosity over the interfaces (merged with ``running_max`` from earlier
    steps), floored at visc_floor so constant states stay unbounded in
    practice; the driver combines this with the advective limit.
    """
    if len(coeffs) < 1:
        raise ValueError("need at least one interface")
    if not np.isfinite(dx) or dx <= 0.0:
        raise ValueError("dx must be finite and > 0")
    k3 = problem.hessian_bound**3
    qmax = max(float(np.max(coeffs.visc_econs)), float(running_max), float(visc_floor))
    return dx / (4.0 * k3 * qmax)
