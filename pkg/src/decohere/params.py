"""Physical inputs, the dimensionless reduction, and derived scales.

Laboratory quantities are CGS (g, cm, s, K). Everything downstream runs in
units where hbar = m = sigma = 1, so a parameter set collapses to three
numbers:

    d_tilde = d / sigma
    t_temp  = k T m sigma^2 / hbar^2     (so lambda_th / sigma = 1 / sqrt(t_temp))
    g_tilde = gamma m sigma^2 / hbar

The natural time unit is ``m sigma^2 / hbar``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .exceptions import DegenerateInputError, DomainError

__all__ = [
    "PhysicalConstants",
    "CGS",
    "PhysicalParams",
    "NaturalParams",
    "RegimeReport",
    "DEFAULT_THRESHOLD",
    "thermal_wavelength",
    "temperature_for_wavelength",
    "to_natural",
    "natural_time_unit",
    "mixing_time",
    "mixing_time_seconds",
    "classify_regime",
]

DEFAULT_THRESHOLD = 5.0


@dataclass(frozen=True)
class PhysicalConstants:
    hbar: float = 1.0546e-27  # erg s
    k_boltzmann: float = 1.3807e-16  # erg / K

    def __post_init__(self):
        if not (self.hbar > 0 and self.k_boltzmann > 0):
            raise DomainError("physical constants must be strictly positive")


CGS = PhysicalConstants()


@dataclass(frozen=True)
class PhysicalParams:
    """Laboratory inputs in CGS units.

    Parameters
    ----------
    mass : float
        Particle mass in grams.
    temperature : float
        Bath temperature in kelvin; zero is allowed.
    sigma : float
        Initial width of each packet in cm.
    d : float
        Separation of the two packet centres in cm.
    gamma : float
        Dissipative decay rate in 1/s.
    """

    mass: float
    temperature: float
    sigma: float
    d: float
    gamma: float = 0.0

    def __post_init__(self):
        if not self.mass > 0:
            raise DomainError(f"mass must be > 0, got {self.mass!r}")
        if not self.sigma > 0:
            raise DomainError(f"sigma must be > 0, got {self.sigma!r}")
        if not self.d >= 0:
            raise DomainError(f"d must be >= 0, got {self.d!r}")
        if not self.temperature >= 0:
            raise DomainError(f"temperature must be >= 0, got {self.temperature!r}")
        if not self.gamma >= 0:
            raise DomainError(f"gamma must be >= 0, got {self.gamma!r}")


@dataclass(frozen=True)
class NaturalParams:
    d_tilde: float
    t_temp: float = 0.0
    g_tilde: float = 0.0

    def __post_init__(self):
        for name in ("d_tilde", "t_temp", "g_tilde"):
            value = getattr(self, name)
            if not (value >= 0 and math.isfinite(value)):
                raise DomainError(f"{name} must be finite and >= 0, got {value!r}")

    @classmethod
    def from_ratio(cls, d_tilde: float, d_over_lambda: float, g_tilde: float = 0.0) -> "NaturalParams":
        """Build from d/sigma and d/lambda_th (temperature enters through the ratio)."""
        if d_over_lambda < 0:
            raise DomainError("d/lambda_th must be >= 0")
        if d_over_lambda == 0:
            return cls(d_tilde, 0.0, g_tilde)
        if d_tilde <= 0:
            raise DegenerateInputError("d/lambda_th > 0 requires d_tilde > 0")
        return cls(d_tilde, (d_over_lambda / d_tilde) ** 2, g_tilde)

    @property
    def d_over_lambda(self) -> float:
        return self.d_tilde * math.sqrt(self.t_temp)

    @property
    def lambda_over_sigma(self) -> float:
        if self.t_temp == 0:
            return math.inf
        return 1.0 / math.sqrt(self.t_temp)


@dataclass(frozen=True)
class RegimeReport:
    ratio_d_lambda: float
    ratio_d_sigma: float
    in_decoherence_regime: bool
    threshold: float

    def __str__(self):
        verdict = "inside" if self.in_decoherence_regime else "outside"
        return (
            f"d/lambda_th = {self.ratio_d_lambda:.6g}\n"
            f"d/sigma     = {self.ratio_d_sigma:.6g}\n"
            f"threshold   = {self.threshold:.6g}\n"
            f"regime      = {verdict} (requires d >> lambda_th and d >> sigma)"
        )


def thermal_wavelength(mass: float, temperature: float, constants: PhysicalConstants = CGS) -> float:
    """Thermal de Broglie wavelength ``hbar / sqrt(m k T)`` in cm.

    Returns ``math.inf`` at ``temperature == 0``; negative temperature or
    non-positive mass raises :class:`DomainError`.
    """
    if not mass > 0:
        raise DomainError(f"mass must be > 0, got {mass!r}")
    if not temperature >= 0:
        raise DomainError(f"temperature must be >= 0, got {temperature!r}")
    if temperature == 0:
        return math.inf
    return constants.hbar / math.sqrt(mass * constants.k_boltzmann * temperature)


def temperature_for_wavelength(mass: float, wavelength: float, constants: PhysicalConstants = CGS) -> float:
    """Temperature (K) at which the thermal wavelength equals ``wavelength`` (cm)."""
    if not mass > 0:
        raise DomainError(f"mass must be > 0, got {mass!r}")
    if not wavelength > 0:
        raise DomainError(f"wavelength must be > 0, got {wavelength!r}")
    return constants.hbar**2 / (mass * constants.k_boltzmann * wavelength**2)


def to_natural(p: PhysicalParams, constants: PhysicalConstants = CGS) -> NaturalParams:
    tau = natural_time_unit(p, constants)
    t_temp = constants.k_boltzmann * p.temperature * p.mass * p.sigma**2 / constants.hbar**2
    return NaturalParams(d_tilde=p.d / p.sigma, t_temp=t_temp, g_tilde=p.gamma * tau)


def natural_time_unit(p: PhysicalParams, constants: PhysicalConstants = CGS) -> float:
    """Seconds per natural time unit, ``m sigma^2 / hbar``."""
    return p.mass * p.sigma**2 / constants.hbar


def mixing_time(p: NaturalParams) -> float:
    """Time for the two spreading packets to overlap, ``2 d_tilde`` natural units."""
    if p.d_tilde <= 0:
        raise DegenerateInputError("mixing time is undefined for zero separation")
    return 2.0 * p.d_tilde


def mixing_time_seconds(p: PhysicalParams, constants: PhysicalConstants = CGS) -> float:
    return mixing_time(to_natural(p, constants)) * natural_time_unit(p, constants)


def classify_regime(p: NaturalParams, threshold: float = DEFAULT_THRESHOLD) -> RegimeReport:
    """Check whether d is large compared with both lambda_th and sigma.

    ``threshold`` is the minimum ratio accepted as "large"; the default of 5
    is the smallest ratio at which the fringes are already washed out at the
    reference operating point (d = 20 sigma, t = t_mix / 5).
    """
    if not threshold > 0:
        raise DomainError("threshold must be > 0")
    ratio_l = p.d_over_lambda
    ratio_s = p.d_tilde
    return RegimeReport(
        ratio_d_lambda=ratio_l,
        ratio_d_sigma=ratio_s,
        in_decoherence_regime=bool(ratio_l >= threshold and ratio_s >= threshold),
        threshold=threshold,
    )
