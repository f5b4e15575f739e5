"""Static figures from solver run directories.

Reads only the documented CSV layout (summary.csv, snapshots/step_<n>.csv)
and writes deterministic PNGs; see ``render.KINDS`` for the figure kinds.
"""

from .reader import (DataError, SNAPSHOT_COLUMNS, SUMMARY_COLUMNS,
                     read_run, read_snapshot, read_summary, snapshot_steps)
from .render import KINDS, PlotRequest, render

__all__ = [
    "DataError", "KINDS", "PlotRequest", "SNAPSHOT_COLUMNS",
    "SUMMARY_COLUMNS", "read_run", "read_snapshot", "read_summary",
    "render", "snapshot_steps",
]
