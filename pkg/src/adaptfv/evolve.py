"""Time evolution: the finite-volume update, its combined uniform-frame
form, and the full three-step adaptive driver (reconstruct, remap, evolve).

Forward Euler only; steps that exceed the stability limits are rejected
with CflViolation, never clipped silently.
"""

from dataclasses import dataclass
import math

import numpy as np

from . import kernels
from .diagnostics import (StepReport, entropy_residual, limit_mesh_movement,
                          movement_check)
from .fields import CellField, PHYSICAL, REFERENCE, expect_frame, expect_length
from .flux import InterfaceCoeffs, Problem, periodic_coeffs
from .mesh import AdaptParams, Mesh1D, reconstruct_mesh
from .refmap import ReferencePair, gcl_residual, to_reference
from .remap import HTerms, remap_u


class CflViolation(RuntimeError):
    """The requested dt exceeds a stability limit of the current state."""


@dataclass(frozen=True)
class DtPolicy:
    """Time-step selection: cfl_target times the tighter of the
    entropy-feasibility bound dx/(4 K^3 Qmax) and the advective limit
    h_min / max|f'|; never more than max_dt."""

    cfl_target: float = 0.4
    visc_floor: float = 1e-12
    max_dt: float = math.inf

    def __post_init__(self):
        if not 0.0 < self.cfl_target <= 1.0:
            raise ValueError("cfl_target must lie in (0, 1]")
        if self.visc_floor <= 0.0:
            raise ValueError("visc_floor must be > 0")


@dataclass(frozen=True)
class SolverState:
    """Mesh-solution pair plus its reference twin after step n at time t."""

    t: float
    step: int
    mesh: Mesh1D
    u: CellField
    ref: ReferencePair

    @property
    def dx(self) -> float:
        return self.ref.dx


def initial_state(mesh: Mesh1D, u: CellField) -> SolverState:
    expect_frame(u, PHYSICAL, "initial data")
    expect_length(u, mesh.n_cells, "initial data")
    return SolverState(t=0.0, step=0, mesh=mesh, u=u, ref=to_reference(mesh, u))


def _guard_dt(dt: float, coeffs: InterfaceCoeffs, h_min: float, dx: float,
              hessian_bound: float, visc_floor: float):
    if not np.isfinite(dt) or dt < 0.0:
        raise CflViolation(f"dt must be finite and >= 0, got {dt}")
    if dt == 0.0:
        return
    k3 = hessian_bound**3
    qmax = max(float(np.max(coeffs.visc_econs)), visc_floor)
    feas = dx / (4.0 * k3 * qmax)
    speed = float(np.max(np.abs(coeffs.secant)))
    adv = h_min / speed if speed > 0.0 else math.inf
    limit = min(feas, adv)
    if dt > limit * (1.0 + 1e-9):
        raise CflViolation(
            f"dt = {dt:.6g} exceeds the stability limit {limit:.6g} "
            f"(entropy-feasibility {feas:.6g}, advective {adv:.6g}); "
            "reduce the step instead of clipping"
        )


def step_nonuniform(new_mesh: Mesh1D, u_hat: CellField, coeffs: InterfaceCoeffs,
                    dt: float, hessian_bound: float = 1.0,
                    visc_floor: float = 1e-12) -> CellField:
    """u_i <- u_hat_i - dt/h_i * (F_{i+1} - F_i) over the moved mesh."""
    expect_frame(u_hat, PHYSICAL, "update input")
    expect_length(u_hat, new_mesh.n_cells, "update input")
    if len(coeffs) != new_mesh.n_cells + 1:
        raise ValueError(f"got {len(coeffs)} interface coefficients for "
                         f"{new_mesh.n_cells} cells")
    h = new_mesh.widths
    dx = (new_mesh.b - new_mesh.a) / new_mesh.n_cells
    _guard_dt(dt, coeffs, float(np.min(h)), dx, hessian_bound, visc_floor)
    out = kernels.nonuniform_update(u_hat.values, h, coeffs.flux, float(dt))
    return CellField(out, PHYSICAL)


def step_uniform_combined(v: CellField, h: HTerms, coeffs: InterfaceCoeffs,
                          dt: float, dx: float, hessian_bound: float = 1.0,
                          visc_floor: float = 1e-12) -> CellField:
    """Single conservative update over the uniform reference mesh that
    carries both the mesh movement (H terms) and the flux differences."""
    expect_frame(v, REFERENCE, "update input")
    n = len(v)
    if len(h) != n + 1 or len(coeffs) != n + 1:
        raise ValueError("H terms and coefficients must cover all interfaces")
    _guard_dt(dt, coeffs, dx, dx, hessian_bound, visc_floor)
    out = kernels.combined_update(v.values, h.values, coeffs.flux, float(dt), float(dx))
    return CellField(out, REFERENCE)


def choose_dt(problem: Problem, coeffs: InterfaceCoeffs, dx: float,
              h_min: float, max_speed: float, policy: DtPolicy,
              visc_running_max: float = 0.0) -> float:
    """Policy dt from the current coefficients (see DtPolicy)."""
    k3 = problem.hessian_bound**3
    qmax = max(float(np.max(coeffs.visc_econs)), visc_running_max, policy.visc_floor)
    feas = dx / (4.0 * k3 * qmax)
    adv = h_min / max_speed if max_speed > 0.0 else math.inf
    dt = policy.cfl_target * min(feas, adv)
    return min(dt, policy.max_dt)


def adaptive_step(problem: Problem, state: SolverState,
                  adapt_params: AdaptParams | None = None,
                  scheme: str = "rusanov", d_const: float = 0.0,
                  policy: DtPolicy | None = None, enforce: bool = False,
                  max_bisect: int = 30, visc_running_max: float = 0.0):
    """One full step: reconstruct the mesh, remap, evolve.

    adapt_params None freezes the mesh (the step reduces to the flux
    update); enforce scales candidate displacements down until the
    movement bound passes.  Returns (new state, StepReport).
    """
    if policy is None:
        policy = DtPolicy()
    mesh, u, v = state.mesh, state.u, state.ref.v
    dx = state.dx
    n = mesh.n_cells

    candidate = reconstruct_mesh(mesh, u, adapt_params) if adapt_params else mesh

    # Trial coefficients fix dt before the movement limiter runs: the bound
    # is not monotone in dt, so dt cannot be revised afterwards.
    u_trial = remap_u(mesh, candidate, u)
    v_trial = to_reference(candidate, u_trial).v
    trial_coeffs = periodic_coeffs(problem, v_trial.values, scheme, d_const)
    max_speed = max(float(np.max(np.abs(problem.df(v.values)))),
                    float(np.max(np.abs(problem.df(v_trial.values)))))
    h_min = min(float(np.min(mesh.widths)), float(np.min(candidate.widths)))
    dt = choose_dt(problem, trial_coeffs, dx, h_min, max_speed, policy,
                   visc_running_max)
    if dt <= 0.0:
        raise ValueError(f"dt policy produced a non-positive step {dt}")

    if enforce and candidate is not mesh:
        check, theta = limit_mesh_movement(problem, mesh, candidate, u, v,
                                           scheme, d_const, dt, dx, max_bisect)
    else:
        check = movement_check(problem, mesh, candidate, u, v, scheme,
                               d_const, dt, dx)
        theta = 1.0

    u_new = step_nonuniform(check.mesh, check.u_hat, check.coeffs, dt,
                            problem.hessian_bound, policy.visc_floor)
    ref_new = to_reference(check.mesh, u_new)
    defect = np.max(np.abs(gcl_residual(check.mesh, u_new, ref_new)))
    if defect > 1e-13 * max(1.0, float(np.max(np.abs(u_new.values)))):
        raise RuntimeError(f"internal error: reference pair defect {defect:.3g}")

    residual = entropy_residual(v.values, ref_new.v.values,
                                check.coeffs.ent_flux, dt, dx)
    report = StepReport(
        step=state.step + 1,
        t=state.t + dt,
        dt=dt,
        theta=theta,
        mesh_term=check.mesh_term,
        bound=check.bound,
        margin=check.bound - check.mesh_term,
        entropy_residual=residual,
        total_mass=float(np.sum(check.mesh.widths * u_new.values)),
        total_entropy=float(dx * np.sum(Problem.entropy(ref_new.v.values))),
        violations=int(np.count_nonzero(~check.flags)),
        worst_margin=check.worst_margin,
        visc_econs_max=float(np.max(check.coeffs.visc_econs)),
    )
    new_state = SolverState(t=state.t + dt, step=state.step + 1,
                            mesh=check.mesh, u=u_new, ref=ref_new)
    return new_state, report
