"""Entropy-stability diagnostics for the mesh-movement step.

The movement of the mesh contributes a per-cell entropy term
M_i = vtilde_i * (H_i - H_{i+1}); the scheme stays entropy dissipative as
long as M_i is dominated by the flux dissipation, expressed as the
per-cell bound evaluated in ``mesh_term_bound``.  ``limit_mesh_movement``
turns that sufficient condition into a limiter: it shrinks all candidate
displacements by a common factor theta until every cell passes.

Within the step pipeline the entropy variables entering M are the
post-remap reference values; evaluated there, a passing check implies the
per-cell entropy inequality exactly (the remap's own quadratic dissipation
only helps).  ``mesh_term`` itself is agnostic: it contracts whatever
entropy-variable array the caller provides.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .fields import CellField
from .flux import InterfaceCoeffs, Problem, periodic_coeffs
from .mesh import Mesh1D, edge_displacements
from .refmap import to_reference
from .remap import HTerms, h_terms, remap_u

# Closed-inequality slack for the movement check, relative to the bound.
CHECK_REL_TOL = 1e-14


class MovementBoundInfeasible(RuntimeError):
    """Even the unmoved mesh violates the bound (the time step is too
    aggressive for the chosen scheme); lists the violating cells."""

    def __init__(self, cells):
        self.cells = list(cells)
        head = ", ".join(str(c) for c in self.cells[:8])
        more = "..." if len(self.cells) > 8 else ""
        super().__init__(
            "movement bound infeasible even with zero displacement at "
            f"cell(s) {head}{more}; reduce dt (the bound's right-hand side "
            "is negative, i.e. the CFL target is too large for this scheme)"
        )


def mesh_term(v_entropy, h: HTerms) -> np.ndarray:
    """Per-cell mesh entropy contribution M_i = vtilde_i * (H_i - H_{i+1})."""
    v_entropy = np.asarray(v_entropy, dtype=np.float64)
    if v_entropy.shape[0] + 1 != len(h):
        raise ValueError(f"got {len(h)} H terms for {v_entropy.shape[0]} cells")
    hv = h.values
    return v_entropy * (hv[:-1] - hv[1:])


def mesh_term_bound(coeffs: InterfaceCoeffs, dt: float, dx: float,
                    hessian_bound: float = 1.0) -> np.ndarray:
    """Per-cell upper bound that keeps the mesh movement entropy stable."""
    bound, _, _ = kernels.movement_bound_terms(
        coeffs.jump, coeffs.secant, coeffs.visc_econs, coeffs.visc_extra,
        float(dt), float(dx), float(hessian_bound))
    return bound


def entropy_error_terms(coeffs: InterfaceCoeffs, dt: float, dx: float,
                        hessian_bound: float = 1.0):
    """(e_x, e_fe_bound): flux entropy dissipation and the forward-Euler
    production bound; the movement bound equals (dt/dx)*e_x - e_fe_bound."""
    _, e_x, e_fe = kernels.movement_bound_terms(
        coeffs.jump, coeffs.secant, coeffs.visc_econs, coeffs.visc_extra,
        float(dt), float(dx), float(hessian_bound))
    return e_x, e_fe


def check_mesh_term(m, bound, rel_tol: float = CHECK_REL_TOL):
    """Closed inequality m_i <= bound_i, with roundoff slack.

    Returns (per-cell pass flags, worst margin min(bound - m)).
    """
    m = np.asarray(m, dtype=np.float64)
    bound = np.asarray(bound, dtype=np.float64)
    if m.shape != bound.shape:
        raise ValueError("mesh term and bound must have equal lengths")
    tol = rel_tol * np.maximum(1.0, np.abs(bound))
    flags = m <= bound + tol
    return flags, float(np.min(bound - m))


def entropy_residual(v_old, v_new, ent_flux, dt: float, dx: float) -> np.ndarray:
    """Per-cell residual of the discrete entropy inequality,
    U(v_new) - U(v_old) + (dt/dx) * (G_{i+1} - G_i); <= 0 means the cell
    dissipated entropy."""
    v_old = np.asarray(v_old, dtype=np.float64)
    v_new = np.asarray(v_new, dtype=np.float64)
    g = np.asarray(ent_flux, dtype=np.float64)
    if v_old.shape != v_new.shape or g.shape[0] != v_old.shape[0] + 1:
        raise ValueError("inconsistent lengths for entropy residual")
    return (Problem.entropy(v_new) - Problem.entropy(v_old)
            + (dt / dx) * (g[1:] - g[:-1]))


def dissipation_window_exists(c, k):
    """Whether some extra viscosity D >= 0 satisfies (k + D)^2 <= c*D.

    The quadratic D^2 + (2k - c)D + k^2 <= 0 admits a (nonnegative)
    solution exactly when c >= 4k, c > 0.
    """
    c = np.asarray(c, dtype=np.float64)
    k = np.asarray(k, dtype=np.float64)
    return (c > 0) & (c >= 4.0 * k)


@dataclass(frozen=True)
class MovementCheck:
    """One trial mesh evaluated against the movement bound."""

    mesh: Mesh1D
    displacements: np.ndarray
    h: HTerms
    u_hat: CellField
    v_hat: CellField
    coeffs: InterfaceCoeffs
    mesh_term: np.ndarray
    bound: np.ndarray
    flags: np.ndarray
    worst_margin: float


def movement_check(problem: Problem, old_mesh: Mesh1D, trial_mesh: Mesh1D,
                   u: CellField, v: CellField, scheme: str, d_const: float,
                   dt: float, dx: float) -> MovementCheck:
    """Remap onto the trial mesh and evaluate the movement bound there.

    Interface coefficients and the entropy variables in M are taken at the
    post-remap reference values, the same state the flux update will see.
    """
    d = edge_displacements(old_mesh, trial_mesh)
    h = h_terms(v, old_mesh, d)
    u_hat = remap_u(old_mesh, trial_mesh, u)
    v_hat = to_reference(trial_mesh, u_hat).v
    coeffs = periodic_coeffs(problem, v_hat.values, scheme, d_const)
    m = mesh_term(v_hat.values, h)
    bound = mesh_term_bound(coeffs, dt, dx, problem.hessian_bound)
    flags, worst = check_mesh_term(m, bound)
    return MovementCheck(trial_mesh, d, h, u_hat, v_hat, coeffs, m, bound,
                         flags, worst)


def limit_mesh_movement(problem: Problem, old_mesh: Mesh1D, candidate: Mesh1D,
                        u: CellField, v: CellField, scheme: str, d_const: float,
                        dt: float, dx: float, max_bisect: int = 30):
    """Largest theta in {1, 1/2, 1/4, ..., 0} whose scaled displacement
    passes the movement bound in every cell.

    Returns (MovementCheck of the accepted trial, theta).  The coefficients
    are re-evaluated on each trial's post-remap state so the accepted check
    matches the step that will actually run.  Raises
    MovementBoundInfeasible if even theta = 0 fails.
    """
    base = old_mesh.interfaces
    delta = candidate.interfaces - base

    thetas = [1.0] + [0.5**k for k in range(1, max_bisect + 1)] + [0.0]
    check = None
    for theta in thetas:
        if theta == 1.0:
            trial = candidate
        elif theta == 0.0:
            trial = old_mesh
        else:
            trial = Mesh1D(base + theta * delta)
        check = movement_check(problem, old_mesh, trial, u, v, scheme,
                               d_const, dt, dx)
        if bool(np.all(check.flags)):
            return check, theta
    raise MovementBoundInfeasible(np.flatnonzero(~check.flags))


@dataclass(frozen=True)
class StepReport:
    """Diagnostics of one completed step."""

    step: int
    t: float
    dt: float
    theta: float
    mesh_term: np.ndarray
    bound: np.ndarray
    margin: np.ndarray
    entropy_residual: np.ndarray
    total_mass: float
    total_entropy: float
    violations: int
    worst_margin: float
    visc_econs_max: float
