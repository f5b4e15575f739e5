"""Readers for the solver's run-directory layout.

A run directory contains ``summary.csv`` (one row per step), a
``snapshots/`` folder of per-cell ``step_<n>.csv`` files, and ``run_meta``.
The column layouts are fixed:

- summary: step,t,dt,theta,total_mass,total_entropy,maincond_violations,worst_margin
- snapshot: i,x_left,x_right,h,u,v,M_i,maincond_rhs,entropy_residual
"""

from pathlib import Path

import numpy as np

SUMMARY_COLUMNS = ("step", "t", "dt", "theta", "total_mass", "total_entropy",
                   "maincond_violations", "worst_margin")
SNAPSHOT_COLUMNS = ("i", "x_left", "x_right", "h", "u", "v", "M_i",
                    "maincond_rhs", "entropy_residual")


class DataError(ValueError):
    """Missing or malformed run data; the message carries file and line."""


def _read_table(path: Path, columns):
    try:
        text = path.read_text()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    lines = text.strip().splitlines()
    if not lines:
        raise DataError(f"{path}:1: file is empty")
    header = tuple(part.strip() for part in lines[0].split(","))
    if header != tuple(columns):
        raise DataError(
            f"{path}:1: unexpected header {','.join(header)!r}; "
            f"expected {','.join(columns)!r}"
        )
    rows = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != len(columns):
            raise DataError(f"{path}:{lineno}: expected {len(columns)} fields, got {len(parts)}")
        try:
            rows.append([float(p) for p in parts])
        except ValueError as exc:
            raise DataError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise DataError(f"{path}:2: no data rows")
    data = np.asarray(rows)
    return {name: data[:, k] for k, name in enumerate(columns)}


def read_summary(run_dir):
    return _read_table(Path(run_dir) / "summary.csv", SUMMARY_COLUMNS)


def snapshot_steps(run_dir):
    """Sorted snapshot step numbers present in the run directory."""
    snap_dir = Path(run_dir) / "snapshots"
    if not snap_dir.is_dir():
        raise DataError(f"{snap_dir}: snapshot directory is missing")
    steps = []
    for p in snap_dir.glob("step_*.csv"):
        try:
            steps.append(int(p.stem.split("_", 1)[1]))
        except ValueError:
            raise DataError(f"{p}: snapshot name is not step_<n>.csv") from None
    if not steps:
        raise DataError(f"{snap_dir}: no snapshots found")
    return sorted(steps)


def read_snapshot(run_dir, step):
    return _read_table(Path(run_dir) / "snapshots" / f"step_{step}.csv",
                       SNAPSHOT_COLUMNS)


def read_run(run_dir):
    """Summary and all snapshots, keyed by step number."""
    summary = read_summary(run_dir)
    snaps = {step: read_snapshot(run_dir, step) for step in snapshot_steps(run_dir)}
    return summary, snaps


def interfaces_of(snapshot):
    """Interface positions recovered from the per-cell bounds."""
    return np.concatenate((snapshot["x_left"], snapshot["x_right"][-1:]))
