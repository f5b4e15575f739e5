"""Configuration, the run loop, and CSV outputs; the human entry point.

Config files are flat ``key = value`` text; ``#`` starts a comment and
unknown keys are rejected.  Command-line overrides use the same keys
(``--adapt=off``); ``--output-dir`` maps to ``output_dir``.  A run writes

- ``summary.csv``: one row per step with columns
  step,t,dt,theta,total_mass,total_entropy,maincond_violations,worst_margin
- ``snapshots/step_<n>.csv``: one row per cell with columns
  i,x_left,x_right,h,u,v,M_i,maincond_rhs,entropy_residual
- ``run_meta``: the resolved configuration echoed in config syntax.

Numbers are written with 17 significant digits so the files round-trip.
The environment variable ``ADAPTFV_OUTPUT_ROOT`` sets the default output
root used when ``output_dir`` is empty.
"""

import argparse
import math
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

import numpy as np

from .evolve import DtPolicy, adaptive_step, initial_state
from .fields import CellField
from .flux import SCHEMES, Problem, advection, burgers
from .mesh import AdaptParams, Mesh1D


class ConfigError(ValueError):
    """Bad configuration file or override; the message names the key."""


@dataclass(frozen=True)
class RunConfig:
    problem: str = ""
    advection_speed: float = 1.0
    ic: str = "sine"
    riemann_left: float = 1.0
    riemann_right: float = 0.0
    domain_a: float = 0.0
    domain_b: float = 1.0
    n_cells: int = 0
    t_end: float = -1.0
    max_steps: int = 0
    cfl_target: float = 0.4
    scheme: str = "rusanov"
    fixed_d: float = 0.0
    adapt: bool = True
    enforce_maincond: bool = False
    alpha: float = 5.0
    smoothing_passes: int = 1
    equidist_iters: int = 2
    beta: float = 0.4
    k_const: float = 1.0
    visc_floor: float = 1e-12
    snapshot_every: int = 50
    output_dir: str = ""
    seed: int = 0

    def validate(self):
        if self.problem not in ("burgers", "advection"):
            raise ConfigError(f"problem must be burgers or advection, got {self.problem!r}")
        if self.n_cells < 3:
            raise ConfigError(f"n_cells must be >= 3, got {self.n_cells}")
        if not math.isfinite(self.t_end) or self.t_end < 0.0:
            raise ConfigError(f"t_end must be >= 0, got {self.t_end}")
        if not 0.0 < self.cfl_target <= 1.0:
            raise ConfigError(f"cfl_target must lie in (0, 1], got {self.cfl_target}")
        if self.scheme not in SCHEMES:
            raise ConfigError(f"scheme must be one of {SCHEMES}, got {self.scheme!r}")
        if self.domain_b <= self.domain_a:
            raise ConfigError("domain_b must exceed domain_a")
        if self.snapshot_every < 1:
            raise ConfigError("snapshot_every must be >= 1")
        if self.max_steps < 0:
            raise ConfigError("max_steps must be >= 0 (0 = unlimited)")
        ic_name, _ = _parse_ic(self.ic)
        if ic_name not in ("sine", "riemann", "hat"):
            raise ConfigError(f"ic must be sine, hat or riemann(ul,ur), got {self.ic!r}")
        try:
            self.adapt_params()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        return self

    def adapt_params(self) -> AdaptParams:
        return AdaptParams(alpha=self.alpha,
                           smoothing_passes=self.smoothing_passes,
                           equidist_iters=self.equidist_iters,
                           beta=self.beta)

    def build_problem(self) -> Problem:
        if self.problem == "burgers":
            base = burgers()
        else:
            base = advection(self.advection_speed)
        return replace(base, hessian_bound=self.k_const)


_FIELDS = {f.name: f.type for f in fields(RunConfig)}
_REQUIRED = ("problem", "n_cells", "t_end")
_BOOL_WORDS = {"on": True, "true": True, "yes": True, "1": True,
               "off": False, "false": False, "no": False, "0": False}


def _parse_ic(text):
    """Split 'riemann(1,0)' style values into (name, params)."""
    text = text.strip()
    if "(" in text:
        name, _, rest = text.partition("(")
        if not rest.endswith(")"):
            return text, None
        args = [p.strip() for p in rest[:-1].split(",") if p.strip()]
        return name.strip(), args
    return text, None


def _coerce(key: str, raw: str):
    kind = _FIELDS[key]
    raw = raw.strip()
    try:
        if kind is bool:
            low = raw.lower()
            if low not in _BOOL_WORDS:
                raise ValueError(f"expected on/off, got {raw!r}")
            return _BOOL_WORDS[low]
        if kind is int:
            return int(raw)
        if kind is float:
            return float(raw)
        return raw
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {exc}") from None


def _apply(settings: dict, key: str, raw: str, where: str):
    key = key.strip().replace("-", "_")
    if key == "ic":
        name, args = _parse_ic(raw)
        settings["ic"] = name
        if name == "riemann" and args is not None:
            if len(args) != 2:
                raise ConfigError(f"{where}: riemann takes two arguments, got {len(args)}")
            settings["riemann_left"] = _coerce("riemann_left", args[0])
            settings["riemann_right"] = _coerce("riemann_right", args[1])
        return
    if key not in _FIELDS:
        raise ConfigError(f"{where}: unknown key {key!r}")
    settings[key] = _coerce(key, raw)


def load_config(path, overrides=()) -> RunConfig:
    """Parse a flat key = value file, apply overrides, validate."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None

    settings: dict = {}
    seen: set = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        if "=" not in body:
            raise ConfigError(f"{path}:{lineno}: expected key = value, got {line.strip()!r}")
        key, _, raw = body.partition("=")
        key = key.strip().replace("-", "_")
        if key in seen:
            raise ConfigError(f"{path}:{lineno}: duplicate key {key!r}")
        seen.add(key)
        _apply(settings, key, raw, f"{path}:{lineno}")

    for item in overrides:
        opt = item.lstrip("-")
        if "=" not in opt:
            raise ConfigError(f"override {item!r}: expected --key=value")
        key, _, raw = opt.partition("=")
        _apply(settings, key, raw, f"override {item!r}")

    missing = [k for k in _REQUIRED if k not in settings]
    if missing:
        raise ConfigError(f"{path}: missing required key(s): {', '.join(missing)}")
    return RunConfig(**settings).validate()


def echo_config(config: RunConfig) -> str:
    lines = []
    for f in fields(RunConfig):
        value = getattr(config, f.name)
        if isinstance(value, bool):
            value = "on" if value else "off"
        elif isinstance(value, float):
            value = format(value, ".17g")
        lines.append(f"{f.name} = {value}")
    return "\n".join(lines) + "\n"


def initial_condition(config: RunConfig) -> np.ndarray:
    """Exact cell averages of the named profile on the uniform start mesh."""
    a, b, n = config.domain_a, config.domain_b, config.n_cells
    x = np.linspace(a, b, n + 1)
    length = b - a
    if config.ic == "sine":
        k = 2.0 * math.pi / length
        anti = -np.cos(k * (x - a)) / k
        return np.diff(anti) / np.diff(x)
    if config.ic == "riemann":
        mid = 0.5 * (a + b)
        left_len = np.clip(mid - x[:-1], 0.0, np.diff(x))
        h = np.diff(x)
        return (config.riemann_left * left_len
                + config.riemann_right * (h - left_len)) / h
    # hat: unit triangle of half-width length/4 centered at the midpoint
    mid = 0.5 * (a + b)
    w = 0.25 * length

    def hat_anti(t):
        # antiderivative of max(0, 1 - |t - mid|/w)
        s = np.clip((t - mid) / w, -1.0, 1.0)
        return w * (s - 0.5 * s * np.abs(s) + 0.5)

    return (hat_anti(x[1:]) - hat_anti(x[:-1])) / np.diff(x)


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _write_csv(path: Path, header, rows):
    with path.open("w") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(v) for v in row) + "\n")


SUMMARY_HEADER = ("step", "t", "dt", "theta", "total_mass", "total_entropy",
                  "maincond_violations", "worst_margin")
SNAPSHOT_HEADER = ("i", "x_left", "x_right", "h", "u", "v", "M_i",
                   "maincond_rhs", "entropy_residual")


def _snapshot_rows(state, mesh_term, bound, residual):
    x = state.mesh.interfaces
    h = state.mesh.widths
    u = state.u.values
    v = state.ref.v.values
    for i in range(state.mesh.n_cells):
        yield (i, x[i], x[i + 1], h[i], u[i], v[i],
               mesh_term[i], bound[i], residual[i])


def resolve_output_dir(config: RunConfig, config_path=None) -> Path:
    if config.output_dir:
        return Path(config.output_dir)
    root = Path(os.environ.get("ADAPTFV_OUTPUT_ROOT", "runs"))
    stem = Path(config_path).stem if config_path else "run"
    return root / stem


def run(config: RunConfig, output_dir=None, config_path=None) -> Path:
    """Execute the configured run and write its output files.

    Returns the run directory.  Numeric failures (CFL rejection, an
    infeasible movement bound) propagate with step context attached.
    """
    config.validate()
    out = Path(output_dir) if output_dir else resolve_output_dir(config, config_path)
    snaps = out / "snapshots"
    snaps.mkdir(parents=True, exist_ok=True)
    (out / "run_meta").write_text(echo_config(config))

    problem = config.build_problem()
    mesh = Mesh1D.uniform(config.domain_a, config.domain_b, config.n_cells)
    state = initial_state(mesh, CellField.physical(initial_condition(config)))
    params = config.adapt_params() if config.adapt else None
    n = config.n_cells
    zeros = np.zeros(n)

    summary = [(0, 0.0, 0.0, 1.0,
                float(np.sum(mesh.widths * state.u.values)),
                float(state.ref.dx * np.sum(Problem.entropy(state.ref.v.values))),
                0, 0.0)]
    _write_csv(snaps / "step_0.csv", SNAPSHOT_HEADER,
               _snapshot_rows(state, zeros, zeros, zeros))

    visc_running = 0.0
    last_report = None
    t_tol = 1e-12 * max(1.0, config.t_end)
    try:
        while state.t < config.t_end - t_tol:
            if config.max_steps and state.step >= config.max_steps:
                break
            policy = DtPolicy(cfl_target=config.cfl_target,
                              visc_floor=config.visc_floor,
                              max_dt=config.t_end - state.t)
            state, report = adaptive_step(
                problem, state,
                adapt_params=params,
                scheme=config.scheme,
                d_const=config.fixed_d,
                policy=policy,
                enforce=config.enforce_maincond,
                visc_running_max=visc_running,
            )
            last_report = report
            visc_running = max(visc_running, report.visc_econs_max)
            summary.append((report.step, report.t, report.dt, report.theta,
                            report.total_mass, report.total_entropy,
                            report.violations, report.worst_margin))
            if report.step % config.snapshot_every == 0:
                _write_csv(snaps / f"step_{report.step}.csv", SNAPSHOT_HEADER,
                           _snapshot_rows(state, report.mesh_term, report.bound,
                                          report.entropy_residual))
    except Exception as exc:
        raise RuntimeError(
            f"run aborted at step {state.step + 1}, t = {state.t:.6g}: {exc}"
        ) from exc
    finally:
        _write_csv(out / "summary.csv", SUMMARY_HEADER, summary)

    final = snaps / f"step_{state.step}.csv"
    if not final.exists() and last_report is not None:
        _write_csv(final, SNAPSHOT_HEADER,
                   _snapshot_rows(state, last_report.mesh_term, last_report.bound,
                                  last_report.entropy_residual))
    return out


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="adaptfv",
        description="Adaptive-mesh finite-volume solver for 1D scalar conservation laws",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="execute a configured run")
    p_run.add_argument("config", help="path to a key = value config file")
    p_run.add_argument("--output-dir", default=None, help="run output directory")
    p_run.add_argument("overrides", nargs="*",
                       help="config overrides as --key=value")

    p_check = sub.add_parser("check", help="validate a config without running")
    p_check.add_argument("config")
    p_check.add_argument("overrides", nargs="*")

    args, extra = parser.parse_known_args(argv)
    overrides = list(getattr(args, "overrides", [])) + extra

    try:
        config = load_config(args.config, overrides)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2

    if args.command == "check":
        print(echo_config(config), end="")
        return 0

    try:
        out = run(config, output_dir=args.output_dir, config_path=args.config)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:
        print(f"run failed: {exc}", file=sys.stderr)
        return 1
    print(f"run complete: {out}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
