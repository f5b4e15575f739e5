"""Per-cell solution data, tagged with the frame it lives in."""

from dataclasses import dataclass, field

import numpy as np

PHYSICAL = "physical"
REFERENCE = "reference"
_FRAMES = (PHYSICAL, REFERENCE)


@dataclass(frozen=True)
class CellField:
    """Cell averages over a mesh: physical values u, or reference values v."""

    values: np.ndarray
    frame: str = PHYSICAL

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.ndim != 1 or vals.shape[0] < 1:
            raise ValueError("cell values must be a non-empty 1D array")
        if not np.all(np.isfinite(vals)):
            raise ValueError("cell values must be finite")
        if self.frame not in _FRAMES:
            raise ValueError(f"unknown frame {self.frame!r}; expected one of {_FRAMES}")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.values.shape[0]

    @classmethod
    def physical(cls, values):
        return cls(values, PHYSICAL)

    @classmethod
    def reference(cls, values):
        return cls(values, REFERENCE)


def expect_frame(u: CellField, frame: str, what: str = "field"):
    if u.frame != frame:
        raise ValueError(f"{what} must be in the {frame} frame, got {u.frame}")


def expect_length(u: CellField, n: int, what: str = "field"):
    if len(u) != n:
        raise ValueError(f"{what} has {len(u)} values, mesh has {n} cells")
