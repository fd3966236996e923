"""Run configuration: flat ``key = value`` files with ``#`` comments."""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, fields

from .closed_forms import HamiltonianKind, SystemParams
from .errors import DomainError


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    # physical point (ratios to omega_L)
    nu_ratio: float = 0.01
    omega_a_ratio: float = 1.0
    rabi_ratio: float = 1e-3
    eta: float = 0.1
    alpha: float = 1.0
    # figure grids
    eta_min: float = 0.0
    eta_max: float = 1.0
    eta_steps: int = 101
    alpha_min: float = 0.0
    alpha_max: float = 2.0
    alpha_steps: int = 101
    curve_alpha_steps: int = 2001
    k_list: tuple = (0, 1, 2, 3)
    # oracle controls
    fock_dim: int = 96
    steps_per_period: int = 400
    periods: int = 10
    kind: str = "full"
    validate_etas: tuple = (0.0, 0.25, 0.5, 1.0)
    validate_alphas: tuple = (0.0, 0.5, 1.0, 2.0)
    validate_k_max: int = 5
    control_rabi_ratio: float = 0.1
    # output
    out_dir: str = "out"
    format: str = "csv"

    def __post_init__(self):
        try:
            self.params()
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
        for axis in ("eta", "alpha"):
            lo, hi = getattr(self, f"{axis}_min"), getattr(self, f"{axis}_max")
            if not (math.isfinite(lo) and math.isfinite(hi)) or lo < 0 or hi <= lo:
                raise ConfigError(f"{axis} grid needs 0 <= {axis}_min < {axis}_max, got [{lo}, {hi}]")
        for key in ("eta_steps", "alpha_steps", "curve_alpha_steps"):
            if getattr(self, key) < 2:
                raise ConfigError(f"{key} must be >= 2")
        if not self.k_list or any(k < 0 for k in self.k_list):
            raise ConfigError("k_list must be a non-empty list of non-negative integers")
        if not self.validate_etas or not self.validate_alphas:
            raise ConfigError("validation grids must be non-empty")
        if any(v < 0 for v in self.validate_etas + self.validate_alphas):
            raise ConfigError("validation grid values must be >= 0")
        if self.validate_k_max < 0:
            raise ConfigError("validate_k_max must be >= 0")
        if self.periods < 1:
            raise ConfigError("periods must be >= 1")
        if self.steps_per_period < 8 or self.steps_per_period % 8:
            raise ConfigError("steps_per_period must be a positive multiple of 8")
        if self.format not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.format!r}")
        if self.kind not in ("full", "rwa", "both"):
            raise ConfigError(f"kind must be full, rwa or both, got {self.kind!r}")
        if self.control_rabi_ratio <= 0:
            raise ConfigError("control_rabi_ratio must be > 0")

    def params(self, **changes) -> SystemParams:
        base = dict(
            nu_ratio=self.nu_ratio,
            omega_a_ratio=self.omega_a_ratio,
            rabi_ratio=self.rabi_ratio,
            eta=self.eta,
            alpha=self.alpha,
            fock_dim=self.fock_dim,
        )
        base.update(changes)
        return SystemParams(**base)

    def kinds(self) -> tuple:
        if self.kind == "both":
            return (HamiltonianKind.FULL, HamiltonianKind.RWA)
        return (HamiltonianKind.parse(self.kind),)

    def items(self) -> list:
        return [(f.name, getattr(self, f.name)) for f in fields(self)]

    def replace(self, **changes) -> "RunConfig":
        return dataclasses.replace(self, **changes)


def _converter(default):
    if isinstance(default, bool):
        raise TypeError("no boolean keys")
    if isinstance(default, int):
        return int
    if isinstance(default, float):
        return float
    if isinstance(default, tuple):
        inner = int if all(isinstance(v, int) for v in default) else float
        return lambda text: tuple(inner(v) for v in text.split(",") if v.strip())
    return str


def parse_config(text: str, source: str = "<config>") -> RunConfig:
    """Parse ``key = value`` lines; unknown or repeated keys are errors."""
    known = {f.name: f.default for f in fields(RunConfig)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key:
            raise ConfigError(f"{source}:{lineno}: expected 'key = value', got {raw!r}")
        if key not in known:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        if key in values:
            raise ConfigError(f"{source}:{lineno}: duplicate key {key!r}")
        try:
            values[key] = _converter(known[key])(value)
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: bad value for {key}: {value!r}") from None
    return RunConfig(**values)


def load_config(path) -> RunConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))
