"""Non-uniform 1D meshes and curvature-driven mesh reconstruction.

A mesh over [a, b] is stored as its N+1 ordered cell interfaces; the two
domain endpoints never move.  Reconstruction equidistributes a curvature
monitor of the current solution and then caps every interior displacement
at ``beta * min(adjacent old widths)``, which confines each new cell to
overlap only itself and its immediate neighbors.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .fields import CellField, PHYSICAL, expect_frame, expect_length

# Relative displacement below which a reconstruction is treated as
# stationary and the input mesh is returned unchanged.
_STATIONARY_RTOL = 1e-14


@dataclass(frozen=True)
class Mesh1D:
    """Ordered cell interfaces x_0 < x_1 < ... < x_N bounding N cells."""

    interfaces: np.ndarray

    def __post_init__(self):
        x = np.asarray(self.interfaces, dtype=np.float64)
        if x.ndim != 1 or x.shape[0] < 3:
            raise ValueError("a mesh needs at least 3 interfaces (2 cells)")
        if not np.all(np.isfinite(x)):
            raise ValueError("mesh interfaces must be finite")
        if np.any(np.diff(x) <= 0.0):
            raise ValueError("mesh interfaces must be strictly increasing")
        x = x.copy()
        x.flags.writeable = False
        object.__setattr__(self, "interfaces", x)

    @classmethod
    def uniform(cls, a: float, b: float, n_cells: int) -> "Mesh1D":
        return cls(np.linspace(a, b, n_cells + 1))

    @property
    def n_cells(self) -> int:
        return self.interfaces.shape[0] - 1

    @property
    def a(self) -> float:
        return float(self.interfaces[0])

    @property
    def b(self) -> float:
        return float(self.interfaces[-1])

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.interfaces)

    @property
    def centers(self) -> np.ndarray:
        x = self.interfaces
        return 0.5 * (x[:-1] + x[1:])


@dataclass(frozen=True)
class AdaptParams:
    """Knobs of the mesh reconstruction step.

    alpha scales the curvature monitor, smoothing_passes applies periodic
    three-point averaging to the weights, equidist_iters repeats the
    equidistribution sweep, and beta in (0, 0.5] caps interior interface
    displacements relative to the smaller adjacent old cell width.
    """

    alpha: float = 5.0
    smoothing_passes: int = 1
    equidist_iters: int = 2
    beta: float = 0.4

    def __post_init__(self):
        if not np.isfinite(self.alpha) or self.alpha < 0.0:
            raise ValueError("alpha must be finite and >= 0")
        if self.smoothing_passes < 0:
            raise ValueError("smoothing_passes must be >= 0")
        if self.equidist_iters < 1:
            raise ValueError("equidist_iters must be >= 1")
        if not 0.0 < self.beta <= 0.5:
            raise ValueError("beta must lie in (0, 0.5]")


def _monitor(x: np.ndarray, u_vals: np.ndarray, params: AdaptParams) -> np.ndarray:
    w = kernels.monitor_weights(x, u_vals, float(params.alpha))
    if params.smoothing_passes > 0:
        w = kernels.smooth_weights(w, params.smoothing_passes)
    return w


def compute_monitor(u: CellField, mesh: Mesh1D, params: AdaptParams) -> np.ndarray:
    """Per-interface monitor weights w_j = 1 + alpha*|kappa_j|, smoothed.

    kappa_j averages the second divided differences of the cell-center
    data on both sides of interface j (clamped one-sided at the domain
    ends), normalized by the current maximum so the weight range is
    [1, 1+alpha] and equidistribution cannot concentrate cells without
    bound.  Smoothing wraps periodically.  Every weight is >= 1.
    """
    expect_frame(u, PHYSICAL, "monitor input")
    expect_length(u, mesh.n_cells, "monitor input")
    if mesh.n_cells < 3:
        raise ValueError("monitor needs at least 3 cells")
    return _monitor(mesh.interfaces, u.values, params)


def reconstruct_mesh(mesh: Mesh1D, u: CellField, params: AdaptParams) -> Mesh1D:
    """Equidistribute the monitor, then cap displacements (endpoints fixed).

    The equidistribution sweep is repeated ``equidist_iters`` times, with the
    monitor re-evaluated on each candidate mesh from the original data
    (piecewise-linear interpolation at the candidate cell centers).  The
    final candidate is capped against the *input* mesh widths.  If the
    result is stationary up to roundoff the input mesh object is returned,
    so repeated reconstruction of a fixed point is bit-stable.
    """
    expect_frame(u, PHYSICAL, "reconstruction input")
    expect_length(u, mesh.n_cells, "reconstruction input")
    if mesh.n_cells < 3:
        raise ValueError("reconstruction needs at least 3 cells")
    x0 = mesh.interfaces
    xc0 = mesh.centers
    u0 = u.values

    # Intermediate candidates are raw interface arrays: before the final
    # cap they may concentrate cells arbitrarily hard.
    x_cand = x0
    u_cand = u0
    for it in range(params.equidist_iters):
        if it > 0:
            xc = 0.5 * (x_cand[:-1] + x_cand[1:])
            u_cand = np.interp(xc, xc0, u0)
        w = _monitor(x_cand, u_cand, params)
        x_cand = kernels.equidistribute(x_cand, w)

    x_new = kernels.cap_displacements(x0, x_cand, float(params.beta))
    if np.max(np.abs(x_new - x0)) <= _STATIONARY_RTOL * (mesh.b - mesh.a):
        return mesh
    if np.any(np.diff(x_new) <= 0.0):
        raise RuntimeError("internal error: capped reconstruction produced a non-positive cell width")
    return Mesh1D(x_new)


def edge_displacements(old: Mesh1D, new: Mesh1D) -> np.ndarray:
    """Interface movements new - old; boundary entries are exactly zero."""
    if old.n_cells != new.n_cells:
        raise ValueError("meshes must have the same number of cells")
    if old.a != new.a or old.b != new.b:
        raise ValueError("meshes must share their domain endpoints")
    return new.interfaces - old.interfaces


def positive_negative_parts(d):
    """Split d into magnitudes (d_plus, d_minus) with d_plus - d_minus = d."""
    d = np.asarray(d, dtype=np.float64)
    if not np.all(np.isfinite(d)):
        raise ValueError("displacements must be finite")
    return np.maximum(d, 0.0), np.maximum(-d, 0.0)
