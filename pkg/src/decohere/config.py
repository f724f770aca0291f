"""Run configuration: flat ``key = value`` files plus command-line overrides.

Example::

    # Fig. 1 GDA curve
    mode = natural
    d_over_sigma = 20
    d_over_lambda = 1
    kernel = free
    t_over_tmix = 0.2
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields

from .exceptions import DomainError
from .kernels import KERNELS
from .params import CGS, NaturalParams, PhysicalParams, mixing_time, natural_time_unit, to_natural

__all__ = ["ConfigError", "RunConfig", "Resolved", "parse_config_text", "load_config"]

PHYSICAL_KEYS = ("mass_g", "temperature_K", "sigma_cm", "d_cm", "gamma_per_s")
NATURAL_KEYS = ("d_over_sigma", "d_over_lambda", "t_temp", "gamma_tilde")


class ConfigError(ValueError):
    """Malformed or inconsistent configuration (a usage error)."""


@dataclass
class RunConfig:
    mode: str | None = None
    mass_g: float | None = None
    temperature_K: float | None = None
    sigma_cm: float | None = None
    d_cm: float | None = None
    gamma_per_s: float | None = None
    d_over_sigma: float | None = None
    d_over_lambda: float | None = None
    t_temp: float | None = None
    gamma_tilde: float | None = None
    kernel: str = "free"
    x_halfwidth_sigma: float = 30.0
    n_points: int = 2401
    t_over_tmix: float | None = None
    t_natural: float | None = None
    output: str | None = None
    format: str = "csv"

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]

    def update(self, values: dict) -> "RunConfig":
        for key, raw in values.items():
            if raw is None:
                continue
            if key not in self.keys():
                raise ConfigError(f"unknown configuration key {key!r}")
            setattr(self, key, _coerce(key, raw))
        return self

    def resolve(self) -> "Resolved":
        """Validate and convert to natural parameters plus an evaluation time."""
        mode = self.mode
        has_phys = any(getattr(self, k) is not None for k in PHYSICAL_KEYS)
        has_nat = any(getattr(self, k) is not None for k in NATURAL_KEYS)
        if mode is None:
            mode = "physical" if has_phys else "natural"
        if mode not in ("physical", "natural"):
            raise ConfigError(f"mode must be 'physical' or 'natural', got {mode!r}")
        if self.kernel not in KERNELS:
            raise ConfigError(f"unknown kernel {self.kernel!r}; choose from {sorted(KERNELS)}")
        if self.n_points < 2 or not self.x_halfwidth_sigma > 0:
            raise ConfigError("grid needs n_points >= 2 and x_halfwidth_sigma > 0")
        if self.format != "csv":
            raise ConfigError(f"unsupported output format {self.format!r}")
        if self.t_over_tmix is not None and self.t_natural is not None:
            raise ConfigError("give exactly one of t_over_tmix / t_natural")

        try:
            if mode == "physical":
                if has_nat:
                    raise ConfigError("natural-mode keys given in physical mode")
                missing = [k for k in PHYSICAL_KEYS[:4] if getattr(self, k) is None]
                if missing:
                    raise ConfigError(f"physical mode requires {', '.join(missing)}")
                phys = PhysicalParams(
                    mass=self.mass_g,
                    temperature=self.temperature_K,
                    sigma=self.sigma_cm,
                    d=self.d_cm,
                    gamma=self.gamma_per_s or 0.0,
                )
                nat = to_natural(phys, CGS)
            else:
                if has_phys:
                    raise ConfigError("physical-mode keys given in natural mode")
                if self.d_over_sigma is None:
                    raise ConfigError("natural mode requires d_over_sigma")
                if (self.d_over_lambda is None) == (self.t_temp is None):
                    raise ConfigError("give exactly one of d_over_lambda / t_temp")
                phys = None
                g = self.gamma_tilde or 0.0
                if self.d_over_lambda is not None:
                    nat = NaturalParams.from_ratio(self.d_over_sigma, self.d_over_lambda, g)
                else:
                    nat = NaturalParams(self.d_over_sigma, self.t_temp, g)
        except DomainError as exc:
            raise ConfigError(str(exc)) from exc
        return Resolved(self, mode, nat, phys)


@dataclass
class Resolved:
    config: RunConfig
    mode: str
    natural: NaturalParams
    physical: PhysicalParams | None

    @property
    def kernel(self) -> str:
        return self.config.kernel

    @property
    def seconds_per_unit(self) -> float | None:
        if self.physical is None:
            return None
        return natural_time_unit(self.physical, CGS)

    def time(self) -> float:
        """Evaluation time in natural units; defaults to t_mix / 5."""
        cfg = self.config
        if cfg.t_natural is not None:
            if not cfg.t_natural >= 0:
                raise ConfigError("t_natural must be >= 0")
            return float(cfg.t_natural)
        frac = 0.2 if cfg.t_over_tmix is None else cfg.t_over_tmix
        if not frac >= 0:
            raise ConfigError("t_over_tmix must be >= 0")
        if self.natural.d_tilde == 0:
            raise ConfigError("t_over_tmix is undefined for zero separation; set t_natural")
        return frac * mixing_time(self.natural)


_INT_KEYS = {"n_points"}
_STR_KEYS = {"mode", "kernel", "output", "format"}


def _coerce(key, raw):
    if key in _STR_KEYS:
        return str(raw).strip()
    try:
        if key in _INT_KEYS:
            return int(raw)
        value = float(raw)
    except (TypeError, ValueError):
        raise ConfigError(f"{key}: cannot parse {raw!r} as a number") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key}: must be finite")
    return value


def parse_config_text(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if not sep or not key or not value:
            raise ConfigError(f"line {lineno}: expected 'key = value'")
        if key in out:
            raise ConfigError(f"line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def load_config(path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config_text(fh.read())
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
