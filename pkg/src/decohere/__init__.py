"""Decoherence of a free particle prepared in two separated Gaussian packets."""
from .exceptions import (
    DegenerateInputError,
    DomainError,
    NoDecoherenceTime,
    OracleFailure,
    ResolutionError,
)
from .kernels import FreeParticleKernel, MotionKernel, OhmicHighTKernel, commutator_amp, get_kernel, msd
from .params import (
    CGS,
    NaturalParams,
    PhysicalConstants,
    PhysicalParams,
    RegimeReport,
    classify_regime,
    mixing_time,
    temperature_for_wavelength,
    thermal_wavelength,
    to_natural,
)
from .superposition import (
    attenuation,
    attenuation_series,
    decoherence_time,
    p0,
    packet_state,
    probability,
    profile,
)

__version__ = "0.1.0"
