"""Command-line driver.

Subcommands ``walk``, ``spectrum``, ``zitter``, ``entropy`` and ``sweep`` each
write one CSV.  Settings come from flags, optionally layered over a plain
``key=value`` file given with ``--config`` (flags win).  Angles accept a
``pi`` suffix: ``0.25pi``, ``pi/4``, ``-3pi/4``.

Exit status: 0 on success, 2 for an invalid configuration, 3 for a
numerical-domain error such as a walker reaching a truncated boundary.
"""

from __future__ import annotations

import argparse
import logging
import math
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields, replace
from typing import Callable, Sequence

import numpy as np

from .csvio import emit_csv
from .entanglement import entropy_time_series, final_entropy
from .lattice import (
    PERIODIC,
    TRUNCATED,
    DomainError,
    InitialCondition,
    LatticeSpec,
    UnitsConfig,
    make_initial_state,
    spin_distributions,
)
from .spectral import eigensystem, effective_hamiltonian
from .walk import CoinParams, DcaParams, SplitStepParams, WalkParams, evolve
from .zitter import zb_frequency

log = logging.getLogger("splitwalk")

EXIT_OK, EXIT_IO, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3

MODES = ("walk", "spectrum", "zitter", "entropy", "sweep")
KINDS = ("conventional", "splitstep", "dca")
AXES = ("theta1", "theta2", "k", "omega_p", "omega_a")


class ConfigError(ValueError):
    pass


_ANGLE = re.compile(
    r"""^\s*(?P<sign>[+-]?)\s*(?P<num>(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?)?\s*\*?\s*
        pi\s*(/\s*(?P<den>\d+(\.\d*)?))?\s*$""",
    re.VERBOSE,
)


def parse_angle(text: str) -> float:
    """Parse a float, optionally suffixed by ``pi`` and a ``/denominator``."""
    text = str(text).strip()
    m = _ANGLE.match(text.lower())
    if m:
        value = float(m.group("num") or 1.0) * math.pi
        if m.group("den"):
            value /= float(m.group("den"))
        return -value if m.group("sign") == "-" else value
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse angle {text!r}") from None


@dataclass(frozen=True)
class GridAxis:
    name: str
    start: float
    stop: float
    count: int

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.count)


def parse_grid(text: str) -> tuple[GridAxis, ...]:
    """``name=start:stop:count[,name=start:stop:count...]``."""
    axes = []
    for part in filter(None, (p.strip() for p in str(text).split(","))):
        name, eq, spec = part.partition("=")
        name = name.strip().replace("-", "_")
        if not eq or name not in AXES:
            raise ConfigError(f"bad grid axis {part!r}; axes are {', '.join(AXES)}")
        bits = spec.split(":")
        if len(bits) != 3:
            raise ConfigError(f"grid axis {name} needs start:stop:count, got {spec!r}")
        try:
            count = int(bits[2])
        except ValueError:
            raise ConfigError(f"grid count for {name} must be an integer") from None
        if count < 1:
            raise ConfigError(f"grid count for {name} must be positive")
        axes.append(GridAxis(name, parse_angle(bits[0]), parse_angle(bits[1]), count))
    names = [a.name for a in axes]
    if len(set(names)) != len(names):
        raise ConfigError(f"duplicate grid axis in {text!r}")
    return tuple(axes)


@dataclass(frozen=True)
class RunConfig:
    mode: str
    walk_kind: str = "splitstep"
    xi: float = 0.0
    theta: float = 0.0
    phi: float = 0.0
    delta: float = 0.0
    theta1: float = 0.0
    theta2: float = 0.0
    phi1: float = 0.0
    phi2: float = 0.0
    delta1: float = 0.0
    delta2: float = 0.0
    alpha: float | None = None
    beta: float | None = None
    omega_p: float = 0.0
    omega_a: float = 0.0
    x0: int = 0
    k: float = 0.0
    steps: int = 100
    lattice: int | None = None
    boundary: str = TRUNCATED
    grid: tuple[GridAxis, ...] = ()
    out: str = "-"
    jobs: int = 1
    all_steps: bool = False
    a: float = 1.0
    tau: float = 1.0
    hbar: float = 1.0

    @property
    def n_max(self) -> int:
        return self.lattice if self.lattice is not None else max(self.steps + abs(self.x0), 1)

    def units(self) -> UnitsConfig:
        return UnitsConfig(self.a, self.tau, self.hbar)

    def lattice_spec(self) -> LatticeSpec:
        return LatticeSpec(self.n_max, self.boundary)

    def initial_condition(self) -> InitialCondition:
        return InitialCondition(self.omega_p, self.omega_a, self.x0)

    def walk_params(self) -> WalkParams:
        t1, t2 = self.theta1, self.theta2
        if self.walk_kind == "conventional":
            return CoinParams(self.xi, self.theta, self.phi, self.delta)
        if self.walk_kind == "splitstep":
            return SplitStepParams(
                CoinParams(self.xi, t1, self.phi1, self.delta1),
                CoinParams(0.0, t2, self.phi2, self.delta2),
            )
        if self.alpha is None and self.beta is None:
            return DcaParams.from_angle(t2)
        return DcaParams(self.alpha, self.beta)

    def validate(self) -> "RunConfig":
        if self.mode not in MODES:
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.walk_kind not in KINDS:
            raise ConfigError(f"unknown walk kind {self.walk_kind!r}; choose from {', '.join(KINDS)}")
        if self.boundary not in (TRUNCATED, PERIODIC):
            raise ConfigError(f"unknown boundary {self.boundary!r}")
        if self.steps < 0:
            raise ConfigError("--steps must be non-negative")
        if self.jobs < 1:
            raise ConfigError("--jobs must be at least 1")
        if self.lattice is not None and self.lattice < 1:
            raise ConfigError("--lattice half-width must be positive")
        if not -self.n_max <= self.x0 <= self.n_max:
            raise ConfigError(f"x0={self.x0} lies outside the lattice half-width {self.n_max}")
        for name in ("a", "tau", "hbar"):
            if not getattr(self, name) > 0:
                raise ConfigError(f"--{name} must be positive")
        if self.walk_kind == "dca":
            if (self.alpha is None) != (self.beta is None):
                raise ConfigError("--alpha and --beta must be given together")
            if self.alpha is not None and abs(self.alpha**2 + self.beta**2 - 1) > 1e-9:
                raise ConfigError("--alpha^2 + --beta^2 must equal 1")
        names = [axis.name for axis in self.grid]
        walks = self.mode in ("walk", "entropy", "sweep")
        if walks and self.boundary == TRUNCATED and abs(self.x0) + self.steps > self.n_max:
            raise ConfigError(
                f"{self.steps} steps from x0={self.x0} would reach the edge of a truncated "
                f"lattice of half-width {self.n_max}; enlarge --lattice"
            )
        if self.mode in ("walk", "entropy") and self.grid:
            raise ConfigError(f"{self.mode} takes no --grid")
        if self.mode == "spectrum" and names not in ([], ["k"]):
            raise ConfigError("spectrum --grid may only sweep k")
        if self.mode == "zitter" and not set(names) <= {"theta1", "theta2", "k"}:
            raise ConfigError("zitter --grid axes must be among theta1, theta2, k")
        if self.mode == "sweep":
            if len(names) != 2:
                raise ConfigError("sweep needs exactly two --grid axes")
            if set(names) == {"theta1", "theta2"}:
                if self.walk_kind != "splitstep":
                    raise ConfigError("theta1 x theta2 sweeps need --kind splitstep")
            elif set(names) != {"omega_p", "omega_a"}:
                raise ConfigError("sweep axes must be omega_p,omega_a or theta1,theta2")
        return self


# -- modes -------------------------------------------------------------------


def _walk_rows(cfg: RunConfig) -> tuple[list[str], list[tuple]]:
    lattice = cfg.lattice_spec()
    state = make_initial_state(cfg.initial_condition(), lattice)
    x = lattice.positions() * cfg.a
    snaps: list | None = [] if cfg.all_steps else None
    final = evolve(state, cfg.walk_params(), cfg.steps, snaps)
    rows = []
    if cfg.all_steps:
        for step, s in enumerate(snaps):
            up, down = spin_distributions(s)
            rows.extend((step, xi, u, d, u + d) for xi, u, d in zip(x, up, down))
        return ["step", "x", "p_up", "p_down", "p_total"], rows
    up, down = spin_distributions(final)
    rows = [(xi, u, d, u + d) for xi, u, d in zip(x, up, down)]
    return ["x", "p_up", "p_down", "p_total"], rows


def _spectrum_rows(cfg: RunConfig) -> tuple[list[str], list[tuple]]:
    units = cfg.units()
    ks = cfg.grid[0].values() if cfg.grid else np.linspace(-math.pi, math.pi, 201)
    rows = []
    for k in ks:
        es = eigensystem(cfg.theta1, cfg.theta2, k, units)
        h = effective_hamiltonian(cfg.theta1, cfg.theta2, k, units)
        rows.append(
            (
                float(k),
                h.omega_k,
                -units.hbar * h.omega_k,
                es.lambda_plus.real,
                es.lambda_plus.imag,
                es.degenerate,
            )
        )
    return ["k", "omega", "energy_plus", "lambda_plus_re", "lambda_plus_im", "degenerate"], rows


def _zitter_cell(args) -> tuple:
    t1, t2, k, units = args
    return (t1, t2, k, zb_frequency(t1, t2, k, units))


def _grid_points(cfg: RunConfig, names: Sequence[str]) -> list[dict]:
    values = {a.name: a.values() for a in cfg.grid}
    points = [{}]
    for name in names:
        axis = values.get(name, [getattr(cfg, name)])
        points = [dict(p, **{name: float(v)}) for p in points for v in axis]
    return points


def _pool_map(cfg: RunConfig, fn: Callable, items: list) -> list:
    if cfg.jobs == 1 or len(items) < 2:
        return [fn(item) for item in items]
    with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * cfg.jobs))))


def _zitter_rows(cfg: RunConfig) -> tuple[list[str], list[tuple]]:
    units = cfg.units()
    points = _grid_points(cfg, ("theta1", "theta2", "k"))
    rows = _pool_map(cfg, _zitter_cell, [(p["theta1"], p["theta2"], p["k"], units) for p in points])
    return ["theta1", "theta2", "k", "Z"], sorted(rows)


def _entropy_rows(cfg: RunConfig) -> tuple[list[str], list[tuple]]:
    series = entropy_time_series(
        cfg.initial_condition(), cfg.walk_params(), cfg.steps, cfg.lattice_spec()
    )
    return ["step", "S"], [(i, s) for i, s in enumerate(series)]


def _sweep_cell(args) -> tuple:
    cfg, first, second, point = args
    cell = replace(cfg, **point)
    init, walk = cell.initial_condition(), cell.walk_params()
    return (point[first], point[second], final_entropy(init, walk, cfg.steps, cfg.lattice_spec()))


def _sweep_rows(cfg: RunConfig) -> tuple[list[str], list[tuple]]:
    first, second = (a.name for a in cfg.grid)
    points = _grid_points(cfg, (first, second))
    rows = _pool_map(cfg, _sweep_cell, [(cfg, first, second, p) for p in points])
    return [first, second, "S"], sorted(rows)


_RUNNERS = {
    "walk": _walk_rows,
    "spectrum": _spectrum_rows,
    "zitter": _zitter_rows,
    "entropy": _entropy_rows,
    "sweep": _sweep_rows,
}


def run(config: RunConfig) -> int:
    """Validate ``config``, compute, write the CSV and return an exit status."""
    try:
        config.validate()
        headers, rows = _RUNNERS[config.mode](config)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    except DomainError as exc:
        log.error("numerical domain error: %s", exc)
        return EXIT_DOMAIN
    try:
        emit_csv(headers, rows, config.out)
    except OSError as exc:
        log.error("%s", exc)
        return EXIT_IO
    return EXIT_OK


# -- argument handling -------------------------------------------------------

_ANGLE_KEYS = {
    "xi", "theta", "phi", "delta", "theta1", "theta2", "phi1", "phi2",
    "delta1", "delta2", "omega_p", "omega_a", "k",
}
_FLOAT_KEYS = {"alpha", "beta", "a", "tau", "hbar"}
_INT_KEYS = {"x0", "steps", "lattice", "jobs"}


def _convert(key: str, raw: str):
    try:
        if key in _ANGLE_KEYS:
            return parse_angle(raw)
        if key in _FLOAT_KEYS:
            return parse_angle(raw) if "pi" in raw.lower() else float(raw)
        if key in _INT_KEYS:
            return int(raw)
        if key == "grid":
            return parse_grid(raw)
        if key == "all_steps":
            return raw.strip().lower() in ("1", "true", "yes", "on")
    except ValueError as exc:
        raise ConfigError(f"bad value for {key}: {raw!r} ({exc})") from None
    return raw.strip()


def read_config_file(path: str) -> dict:
    """Plain ``key=value`` lines; ``#`` starts a comment."""
    known = {f.name for f in fields(RunConfig)} | {"kind"}
    out = {}
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc.strerror or exc}") from None
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, eq, value = line.partition("=")
        key = key.strip().replace("-", "_")
        if not eq or key not in known:
            raise ConfigError(f"{path}:{lineno}: unrecognised line {line!r}")
        if key == "kind":
            key = "walk_kind"
        out[key] = _convert(key, value)
    return out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file; flags override it")
    common.add_argument("--kind", dest="walk_kind", choices=KINDS)
    for name in sorted(_ANGLE_KEYS):
        common.add_argument("--" + name.replace("_", "-"), dest=name, type=str, metavar="ANGLE")
    for name in ("alpha", "beta", "a", "tau", "hbar"):
        common.add_argument("--" + name, dest=name, type=str)
    common.add_argument("--x0", type=str, help="initial site")
    common.add_argument("--steps", type=str)
    common.add_argument("--lattice", type=str, help="lattice half-width n_max")
    common.add_argument("--boundary", choices=(TRUNCATED, PERIODIC))
    common.add_argument("--grid", type=str, help="name=start:stop:count[,...]")
    common.add_argument("--out", type=str, help="output CSV path, '-' for stdout")
    common.add_argument("--jobs", type=str, help="worker processes for grid sweeps")
    common.add_argument("--all-steps", dest="all_steps", action="store_const", const="1",
                        help="walk: write every step, not just the last")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="splitwalk", description="Simulate one-dimensional discrete-time quantum walks and write CSV."
    )
    sub = parser.add_subparsers(dest="mode", required=True)
    sub.add_parser("walk", parents=[common], help="position distribution after N steps")
    sub.add_parser("spectrum", parents=[common], help="quasi-energy band over k")
    sub.add_parser("zitter", parents=[common], help="Zitterbewegung frequency grid")
    sub.add_parser("entropy", parents=[common], help="entanglement entropy time series")
    sub.add_parser("sweep", parents=[common], help="final entropy over a 2-D grid")
    return parser


def config_from_args(argv: Sequence[str] | None = None) -> RunConfig:
    args = build_parser().parse_args(argv)
    values = read_config_file(args.config) if args.config else {}
    values.pop("mode", None)
    for key in {f.name for f in fields(RunConfig)} - {"mode"}:
        raw = getattr(args, key, None)
        if raw is not None:
            values[key] = _convert(key, raw)
    if args.verbose:
        logging.getLogger("splitwalk").setLevel(logging.INFO)
    if args.mode == "sweep" and "steps" not in values:
        values["steps"] = 90
    return RunConfig(mode=args.mode, **values)


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(format="splitwalk: %(message)s", level=logging.WARNING)
    try:
        cfg = config_from_args(argv)
    except ConfigError as exc:
        log.error("config error: %s", exc)
        return EXIT_CONFIG
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
