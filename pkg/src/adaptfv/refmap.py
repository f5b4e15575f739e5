"""Transforms between the adaptive mesh-solution pair and its uniform
reference pair, related per cell by dx * v_i = h_i * u_i."""

from dataclasses import dataclass

import numpy as np

from .fields import CellField, PHYSICAL, REFERENCE, expect_frame, expect_length
from .mesh import Mesh1D


@dataclass(frozen=True)
class ReferencePair:
    """Uniform-width reference mesh (dx) and its cell values v."""

    dx: float
    v: CellField

    def __post_init__(self):
        if not np.isfinite(self.dx) or self.dx <= 0.0:
            raise ValueError("reference width dx must be finite and > 0")
        expect_frame(self.v, REFERENCE, "reference values")


def _check_pair(mesh: Mesh1D, ref: ReferencePair):
    expect_length(ref.v, mesh.n_cells, "reference values")
    if abs(ref.dx * mesh.n_cells - (mesh.b - mesh.a)) > 1e-12 * (mesh.b - mesh.a):
        raise ValueError("reference pair does not span the mesh's physical domain")


def to_reference(mesh: Mesh1D, u: CellField) -> ReferencePair:
    """Build the reference pair: v_i = h_i * u_i / dx."""
    expect_frame(u, PHYSICAL, "physical values")
    expect_length(u, mesh.n_cells, "physical values")
    dx = (mesh.b - mesh.a) / mesh.n_cells
    v = mesh.widths * u.values / dx
    return ReferencePair(dx, CellField(v, REFERENCE))


def from_reference(mesh: Mesh1D, ref: ReferencePair) -> CellField:
    """Invert the per-cell mass relation: u_i = dx * v_i / h_i."""
    _check_pair(mesh, ref)
    return CellField(ref.dx * ref.v.values / mesh.widths, PHYSICAL)


def gcl_residual(mesh: Mesh1D, u: CellField, ref: ReferencePair) -> np.ndarray:
    """Per-cell defect dx * v_i - h_i * u_i of the mass relation.

    A consistent pair gives zeros up to roundoff; mismatched pairs report
    their defect without raising.
    """
    expect_frame(u, PHYSICAL, "physical values")
    expect_length(u, mesh.n_cells, "physical values")
    _check_pair(mesh, ref)
    return ref.dx * ref.v.values - mesh.widths * u.values
