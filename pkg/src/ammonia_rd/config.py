"""Run configuration: strict JSON schema with named blocks.

Required block: ``model``.  Optional blocks (defaults shown by the
dataclasses below): ``scaling``, ``grid``, ``solver``, ``barrier``,
``output``, ``initial``, ``profile``, ``sweep``.  Unknown keys anywhere are
rejected.
"""
from __future__ import annotations

import json
import math
from dataclasses import MISSING, asdict, dataclass, field, fields
from importlib import resources
from pathlib import Path

from .errors import InvalidModel, ParseError, SchemaError
from .grid import Grid2D
from .model import ModelParams, validate_model
from .pde import SolverConfig
from .radial import BCKind, RadialBC


@dataclass(frozen=True)
class ScalingBlock:
    A1: float = 1.0
    A2: float = 1.0
    T: float = 1.0


@dataclass(frozen=True)
class GridBlock:
    Lx: float = 1.0
    Ly: float = 1.0
    nx: int = 201
    ny: int = 201


@dataclass(frozen=True)
class SolverBlock:
    t_end: float = 10.0
    steps: int = 101
    eps_floor: float = 1e-12
    picard_iters: int = 1


@dataclass(frozen=True)
class BarrierBlock:
    b: float | None = None
    b_min: float = 1e-3
    b_max: float = 1e3
    steps: int = 121


@dataclass(frozen=True)
class OutputBlock:
    directory: str = "out"
    save_every: int = 10
    emit_plots: bool = False


@dataclass(frozen=True)
class InitialBlock:
    u0: float = 31.0
    v0: float = 10.0
    radius_fraction: float = 0.6
    power: float = 1.5


@dataclass(frozen=True)
class ProfileBlock:
    kind: str = "compact"
    M1: float = 31.0
    M2: float = 10.0
    xi_max: float = 10.0
    h0: float = 1e-4
    eps_front: float = 1e-10
    window_fraction: float = 0.3
    samples: int = 401


@dataclass(frozen=True)
class SweepBlock:
    m: tuple = (0.0, 0.5, 2.0)
    sigma: tuple = (-3.0, -1.0, 1.0, 1.5)


@dataclass(frozen=True)
class RunConfig:
    model: ModelParams
    scaling: ScalingBlock = field(default_factory=ScalingBlock)
    grid: GridBlock = field(default_factory=GridBlock)
    solver: SolverBlock = field(default_factory=SolverBlock)
    barrier: BarrierBlock = field(default_factory=BarrierBlock)
    output: OutputBlock = field(default_factory=OutputBlock)
    initial: InitialBlock = field(default_factory=InitialBlock)
    profile: ProfileBlock = field(default_factory=ProfileBlock)
    sweep: SweepBlock = field(default_factory=SweepBlock)

    def grid2d(self) -> Grid2D:
        return Grid2D(self.grid.Lx, self.grid.Ly, self.grid.nx, self.grid.ny)

    def solver_config(self) -> SolverConfig:
        return SolverConfig.from_steps(self.solver.t_end, self.solver.steps,
                                       eps_floor=self.solver.eps_floor,
                                       picard_iters=self.solver.picard_iters,
                                       save_every=self.output.save_every)

    def radial_bc(self) -> RadialBC:
        return RadialBC(BCKind(self.profile.kind), self.profile.M1, self.profile.M2,
                        self.profile.xi_max)


BLOCKS = {f.name: f for f in fields(RunConfig)}
_BLOCK_TYPES = {
    "model": ModelParams, "scaling": ScalingBlock, "grid": GridBlock,
    "solver": SolverBlock, "barrier": BarrierBlock, "output": OutputBlock,
    "initial": InitialBlock, "profile": ProfileBlock, "sweep": SweepBlock,
}


def _coerce(block, name, value, ftype: str):
    # field annotations are strings under postponed evaluation
    key = f"{block}.{name}"
    if ftype == "bool":
        if not isinstance(value, bool):
            raise SchemaError(key, "expected true or false")
        return value
    if ftype == "str":
        if not isinstance(value, str):
            raise SchemaError(key, "expected a string")
        return value
    if ftype == "tuple":
        if not isinstance(value, list) or not value:
            raise SchemaError(key, "expected a non-empty list of numbers")
        return tuple(_coerce(block, name, v, "float") for v in value)
    if value is None and "None" in ftype:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(key, "expected a number")
    if not math.isfinite(value):
        raise SchemaError(key, "expected a finite number")
    if ftype == "int":
        if int(value) != value:
            raise SchemaError(key, "expected an integer")
        return int(value)
    return float(value)


def _build_block(name, raw):
    cls = _BLOCK_TYPES[name]
    if not isinstance(raw, dict):
        raise SchemaError(name, "block must be a JSON object")
    known = {f.name: f for f in fields(cls)}
    for key in raw:
        if key not in known:
            raise SchemaError(f"{name}.{key}", "unknown key")
    for key, f in known.items():
        if key not in raw and f.default is MISSING and f.default_factory is MISSING:
            raise SchemaError(f"{name}.{key}", "required key missing")
    return cls(**{key: _coerce(name, key, value, known[key].type) for key, value in raw.items()})


def config_from_dict(doc: dict) -> RunConfig:
    if not isinstance(doc, dict):
        raise SchemaError("<root>", "configuration must be a JSON object")
    for key in doc:
        if key not in BLOCKS:
            raise SchemaError(key, "unknown block")
    if "model" not in doc:
        raise SchemaError("model", "required block missing")
    blocks = {name: _build_block(name, raw) for name, raw in doc.items()}
    try:
        blocks["model"] = validate_model(blocks["model"])
    except InvalidModel as exc:
        # violation messages lead with the offending parameter name
        key = str(exc.violations[0]).split()[0]
        raise SchemaError(f"model.{key}", str(exc)) from exc
    cfg = RunConfig(**blocks)
    _check_values(cfg)
    return cfg


def _check_values(cfg: RunConfig):
    try:
        cfg.grid2d()
        cfg.solver_config()
        cfg.radial_bc()
    except ValueError as exc:
        raise SchemaError("value", str(exc)) from exc
    s = cfg.scaling
    if not (s.A1 > 0 and s.A2 > 0 and s.T > 0):
        raise SchemaError("scaling", "A1, A2 and T must be positive")
    b = cfg.barrier
    if b.b is not None and not b.b > 0:
        raise SchemaError("barrier.b", "must be positive")
    if not (0 < b.b_min < b.b_max) or b.steps < 2:
        raise SchemaError("barrier", "need 0 < b_min < b_max and steps >= 2")


def parse_config(path) -> RunConfig:
    """Read and validate a JSON run configuration."""
    text = Path(path).read_text()
    return parse_config_text(text)


def parse_config_text(text: str) -> RunConfig:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from exc
    return config_from_dict(doc)


def config_to_dict(cfg: RunConfig) -> dict:
    out = {}
    for name in BLOCKS:
        block = getattr(cfg, name)
        data = asdict(block)
        out[name] = {k: list(v) if isinstance(v, tuple) else v for k, v in data.items()}
    return out


def serialize(cfg: RunConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2) + "\n"


def bundled_config_path(name: str = "baseline") -> Path:
    """Path of a configuration shipped with the package."""
    return Path(str(resources.files("ammonia_rd") / "data" / f"{name}.json"))
