"""Flat key = value experiment configuration.

Files are UTF-8 text, one assignment per line, with ``#`` comments and
blank lines ignored. Unknown keys are rejected so typos fail loudly.
Distances accept ``none`` to disable path loss on that link (the error
rate and secrecy figures are conventionally plotted against P_T/N0 with
unit-variance small-scale fading; the harvester link keeps its absolute
distance so z_DC comes out in watts).
"""

from __future__ import annotations

from dataclasses import dataclass, fields, replace

from .channel import dbm_to_watts
from .codebook import SchemeSpec, SCHEMES
from .harvester import RectennaParams


def _parse_bool(text: str) -> bool:
    t = text.strip().lower()
    if t in ("true", "yes", "on", "1"):
        return True
    if t in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _parse_optional_float(text: str):
    t = text.strip().lower()
    if t in ("none", "off"):
        return None
    return float(text)


def _parse_grid(text: str) -> tuple[float, ...]:
    vals = tuple(float(v) for v in text.replace(",", " ").split())
    if not vals:
        raise ValueError("empty grid")
    return vals


@dataclass(frozen=True)
class ExperimentConfig:
    # scheme under test
    scheme: str = "ssk"
    nt: int = 4
    na: int = 1
    mod_order: int = 1
    # geometry / fading
    n_ir: int = 2
    n_eve: int = 2
    n_eh: int = 4
    d_eh: float | None = 1.5
    d_ir: float | None = None
    d_eve: float | None = None
    flat_subbands: bool = True
    # waveform
    n_subbands: int = 1
    pt_dbm: float = 36.0
    rho: float = 0.2
    f1_hz: float = 1e5
    delta_f_hz: float = 1e3
    # rectenna
    k2: float = 0.0034
    k4: float = 0.3829
    r_ant: float = 50.0
    r_load: float = 50.0
    beta2: float = 1.0
    beta4: float = 0.1
    gamma_in_dbm: float = -20.0
    gamma_sat_dbm: float = 10.0
    # sweep controls
    snr_db_grid: tuple[float, ...] = (0.0, 4.0, 8.0, 12.0, 16.0, 20.0)
    rho_grid: tuple[float, ...] = (0.0, 0.25, 0.5, 0.75, 1.0)
    n_trials: int = 20000
    n_realizations: int = 600
    n_channels: int = 200
    n_noise: int = 1000
    seed: int = 0
    eve_whiten: bool = False
    noiseless: bool = False

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.n_subbands not in (1, 3, 5):
            raise ValueError("n_subbands must be one of 1, 3, 5")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")
        if any(not 0.0 <= r <= 1.0 for r in self.rho_grid):
            raise ValueError("rho_grid values must lie in [0, 1]")
        for name in ("snr_db_grid", "rho_grid"):
            grid = getattr(self, name)
            if len(grid) == 0:
                raise ValueError(f"{name} must not be empty")
            if any(b <= a for a, b in zip(grid, grid[1:])):
                raise ValueError(f"{name} must be strictly ascending")
        for name in ("n_ir", "n_eve", "n_eh", "n_trials", "n_realizations",
                     "n_channels", "n_noise"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a non-negative integer")

    @property
    def pt_watts(self) -> float:
        return dbm_to_watts(self.pt_dbm)

    def scheme_spec(self) -> SchemeSpec:
        return SchemeSpec(self.scheme, self.nt, self.na, self.mod_order)

    def rectenna(self) -> RectennaParams:
        return RectennaParams(
            k2=self.k2,
            k4=self.k4,
            r_ant=self.r_ant,
            r_load=self.r_load,
            beta2=self.beta2,
            beta4=self.beta4,
            gamma_in_dbm=self.gamma_in_dbm,
            gamma_sat_dbm=self.gamma_sat_dbm,
        )

    def with_overrides(self, **kwargs) -> "ExperimentConfig":
        return replace(self, **kwargs)


_PARSERS = {
    "scheme": lambda s: s.strip().lower(),
    "nt": int,
    "na": int,
    "mod_order": int,
    "n_ir": int,
    "n_eve": int,
    "n_eh": int,
    "d_eh": _parse_optional_float,
    "d_ir": _parse_optional_float,
    "d_eve": _parse_optional_float,
    "flat_subbands": _parse_bool,
    "n_subbands": int,
    "pt_dbm": float,
    "rho": float,
    "f1_hz": float,
    "delta_f_hz": float,
    "k2": float,
    "k4": float,
    "r_ant": float,
    "r_load": float,
    "beta2": float,
    "beta4": float,
    "gamma_in_dbm": float,
    "gamma_sat_dbm": float,
    "snr_db_grid": _parse_grid,
    "rho_grid": _parse_grid,
    "n_trials": int,
    "n_realizations": int,
    "n_channels": int,
    "n_noise": int,
    "seed": int,
    "eve_whiten": _parse_bool,
    "noiseless": _parse_bool,
}

assert set(_PARSERS) == {f.name for f in fields(ExperimentConfig)}


def parse_config(text: str) -> ExperimentConfig:
    values = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"line {lineno}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in _PARSERS:
            raise ValueError(f"line {lineno}: unknown key {key!r}")
        if key in values:
            raise ValueError(f"line {lineno}: duplicate key {key!r}")
        try:
            values[key] = _PARSERS[key](value.strip())
        except ValueError as exc:
            raise ValueError(f"line {lineno}: bad value for {key!r}: {exc}") from exc
    return ExperimentConfig(**values)


def load_config(path) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())
