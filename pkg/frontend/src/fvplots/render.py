"""Figure rendering: run directory in, PNG files out.

Output is deterministic: figures carry no timestamps and re-rendering
overwrites the same bytes.
"""

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)
import numpy as np  # noqa: E402

from .reader import interfaces_of, read_run  # noqa: E402

KINDS = ("profile", "trajectory", "entropy", "margins")

# strip the writer's software tag so output bytes depend only on the data
_PNG_META = {"Software": None}


@dataclass
class PlotRequest:
    run_dir: Path
    kinds: tuple = KINDS
    out_dir: Path | None = None

    def __post_init__(self):
        self.run_dir = Path(self.run_dir)
        self.kinds = tuple(self.kinds)
        unknown = [k for k in self.kinds if k not in KINDS]
        if unknown:
            raise ValueError(
                f"unknown figure kind(s) {', '.join(unknown)}; valid kinds: {', '.join(KINDS)}"
            )
        if not self.kinds:
            raise ValueError(f"no figure kinds requested; valid kinds: {', '.join(KINDS)}")
        self.out_dir = Path(self.out_dir) if self.out_dir else self.run_dir / "figures"


def _save(fig, path):
    fig.savefig(path, dpi=120, metadata=_PNG_META)
    plt.close(fig)


def _profile(summary, snaps, path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for step in sorted(snaps):
        s = snaps[step]
        centers = 0.5 * (s["x_left"] + s["x_right"])
        ax.plot(centers, s["u"], label=f"step {step}", linewidth=1.2)
    ax.set_xlabel("x")
    ax.set_ylabel("u")
    ax.set_title("solution profiles")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    _save(fig, path)


def _trajectory(summary, snaps, path):
    steps = sorted(snaps)
    positions = np.stack([interfaces_of(snaps[s]) for s in steps])
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for j in range(positions.shape[1]):
        ax.plot(steps, positions[:, j], color="tab:blue", linewidth=0.6, alpha=0.7)
    ax.set_xlabel("step")
    ax.set_ylabel("interface position")
    ax.set_title("mesh node trajectories")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def _entropy(summary, snaps, path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(summary["t"], summary["total_entropy"], color="tab:red", linewidth=1.4)
    ax.set_xlabel("t")
    ax.set_ylabel("total entropy")
    ax.set_title("total entropy history")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


def _margins(summary, snaps, path):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    ax.plot(summary["t"], summary["worst_margin"], color="tab:green", linewidth=1.2)
    ax.axhline(0.0, color="black", linewidth=0.8, linestyle="--")
    ax.set_xlabel("t")
    ax.set_ylabel("worst margin")
    ax.set_title("movement-bound margin (negative = violated)")
    ax.grid(True, alpha=0.3)
    _save(fig, path)


_RENDERERS = {
    "profile": _profile,
    "trajectory": _trajectory,
    "entropy": _entropy,
    "margins": _margins,
}


def render(request: PlotRequest):
    """Write one image per requested kind; returns the written paths."""
    summary, snaps = read_run(request.run_dir)
    request.out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for kind in request.kinds:
        path = request.out_dir / f"{kind}.png"
        _RENDERERS[kind](summary, snaps, path)
        written.append(path)
    return written
