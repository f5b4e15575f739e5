"""Conservative piecewise-constant remap between meshes.

Both forms of the same update live here: the direct mass transfer in
physical variables, and the interface H-term form in reference variables
(v_hat_i = v_i + H_{i} - H_{i+1} with the left/right interface indices of
cell i).  Indexing is periodic throughout.
"""

from dataclasses import dataclass

import numpy as np

from . import kernels
from .fields import CellField, PHYSICAL, REFERENCE, expect_frame, expect_length
from .mesh import Mesh1D, edge_displacements


@dataclass(frozen=True)
class HTerms:
    """Per-interface mass exchanged with the neighbor due to interface motion."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.shape[0] < 2:
            raise ValueError("H terms must be a per-interface 1D array")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.shape[0]


def check_displacement_cap(old_mesh: Mesh1D, displacements: np.ndarray):
    """Every interior move must stay strictly inside both neighbor cells."""
    h = old_mesh.widths
    cap = np.minimum(h[:-1], h[1:])
    bad = np.flatnonzero(np.abs(displacements[1:-1]) >= cap)
    if bad.size:
        j = int(bad[0]) + 1
        raise ValueError(
            f"displacement cap violated at interface {j}: "
            f"|{displacements[j]:.6g}| >= min adjacent width {cap[j - 1]:.6g}"
        )


def remap_u(old_mesh: Mesh1D, new_mesh: Mesh1D, u: CellField) -> CellField:
    """Transfer physical cell averages onto the moved mesh, conserving mass.

    Requires the displacement cap (checked); each new cell then collects
    mass only from itself and its immediate neighbors.
    """
    expect_frame(u, PHYSICAL, "remap input")
    expect_length(u, old_mesh.n_cells, "remap input")
    d = edge_displacements(old_mesh, new_mesh)
    check_displacement_cap(old_mesh, d)
    u_hat = kernels.remap_field(old_mesh.interfaces, new_mesh.interfaces, u.values)
    return CellField(u_hat, PHYSICAL)


def h_terms(v: CellField, old_mesh: Mesh1D, displacements: np.ndarray) -> HTerms:
    """H_j = (d_j)_-/h_{j-1} * v_{j-1} - (d_j)_+/h_j * v_j (periodic cells)."""
    expect_frame(v, REFERENCE, "H-term input")
    expect_length(v, old_mesh.n_cells, "H-term input")
    d = np.asarray(displacements, dtype=np.float64)
    if d.shape[0] != old_mesh.n_cells + 1:
        raise ValueError(
            f"got {d.shape[0]} displacements for {old_mesh.n_cells + 1} interfaces"
        )
    return HTerms(kernels.h_terms(d, old_mesh.widths, v.values))


def remap_v_via_h(v: CellField, h: HTerms) -> CellField:
    """Reference-frame remap v_hat_i = v_i + H_i - H_{i+1}."""
    expect_frame(v, REFERENCE, "remap input")
    if len(h) != len(v) + 1:
        raise ValueError(f"got {len(h)} H terms for {len(v)} cells")
    hv = h.values
    return CellField(v.values + hv[:-1] - hv[1:], REFERENCE)
