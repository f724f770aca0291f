"""Two-packet coordinate probability, attenuation and decoherence time.

All quantities are in natural units (hbar = m = sigma = 1). Positions are in
units of sigma and densities are sigma * P, so they can be compared
directly with dimensionless plots.

For a kernel giving s(t) and c(t):

    w2(t) = 1 + c^2 / 4 + s
    P0(x) = exp(-x^2 / 2 w2) / sqrt(2 pi w2)
    a(t)  = exp(-s d^2 / (8 w2))
    P(x)  = N [P0(x - d/2) + P0(x + d/2)
               + 2 exp(-d^2 / 8 w2) a P0(x) cos(c x d / (4 w2))]
    N     = 1 / (2 (1 + exp(-d^2 / 8)))

For d_tilde >~ 40 the overlap factor in N underflows to 0 and N is 1/2.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import trapezoid

from .exceptions import NoDecoherenceTime
from .kernels import get_kernel
from .params import NaturalParams

__all__ = [
    "PacketState",
    "ProbabilityProfile",
    "AttenuationSeries",
    "packet_state",
    "p0",
    "normalization_constant",
    "log_attenuation",
    "attenuation",
    "probability",
    "probability_terms",
    "fringe_wavenumber",
    "profile",
    "decoherence_time",
    "attenuation_series",
]


@dataclass(frozen=True)
class PacketState:
    """Width of one packet at time ``t``; ``w2 = 1 + c**2 / 4 + s``."""

    t: float
    s: float
    c: float
    w2: float


@dataclass
class ProbabilityProfile:
    t: float
    xs: np.ndarray
    values: np.ndarray
    params: NaturalParams
    kernel_name: str

    def trapezoid(self) -> float:
        return float(trapezoid(self.values, self.xs))


@dataclass
class AttenuationSeries:
    ts: np.ndarray
    a_exact: np.ndarray
    a_gauss: np.ndarray
    tau_d: float
    log_deviation: np.ndarray = field(repr=False)


def packet_state(kernel, t: float, p: NaturalParams) -> PacketState:
    k = get_kernel(kernel)
    s = k.msd(t, p)
    c = k.commutator(t, p)
    return PacketState(t=float(t), s=float(s), c=float(c), w2=1.0 + 0.25 * c * c + s)


def p0(x, st: PacketState):
    """Single-packet density centred at the origin with variance ``st.w2``."""
    x = np.asarray(x, dtype=float)
    out = np.exp(-x * x / (2.0 * st.w2)) / math.sqrt(2.0 * math.pi * st.w2)
    return float(out) if out.ndim == 0 else out


def normalization_constant(p: NaturalParams) -> float:
    return 1.0 / (2.0 * (1.0 + math.exp(-p.d_tilde**2 / 8.0)))


def fringe_wavenumber(st: PacketState, p: NaturalParams) -> float:
    """Angular wavenumber of the cosine term, ``c d / (4 w2)``."""
    return st.c * p.d_tilde / (4.0 * st.w2)


def _log_attenuation(st: PacketState, p: NaturalParams) -> float:
    return -st.s * p.d_tilde**2 / (8.0 * st.w2)


def log_attenuation(kernel, t: float, p: NaturalParams) -> float:
    """Natural log of a(t); finite even where a(t) itself underflows."""
    return _log_attenuation(packet_state(kernel, t, p), p)


def attenuation(kernel, t: float, p: NaturalParams) -> float:
    return math.exp(log_attenuation(kernel, t, p))


def probability_terms(x, kernel, t: float, p: NaturalParams):
    """Return the classical and interference parts of P separately.

    Both parts already include the prefactor N, so ``classical +
    interference`` is the full density.
    """
    st = packet_state(kernel, t, p)
    x = np.asarray(x, dtype=float)
    half = 0.5 * p.d_tilde
    n = normalization_constant(p)
    classical = n * (p0(x - half, st) + p0(x + half, st))
    amp = 2.0 * math.exp(-p.d_tilde**2 / (8.0 * st.w2) + _log_attenuation(st, p))
    interference = n * amp * p0(x, st) * np.cos(fringe_wavenumber(st, p) * x)
    return classical, interference


def probability(x, kernel, t: float, p: NaturalParams):
    """Coordinate probability density sigma * P(x, t) of the two-packet state."""
    classical, interference = probability_terms(x, kernel, t, p)
    out = classical + interference
    return float(out) if np.ndim(out) == 0 else out


def profile(xs, kernel, t: float, p: NaturalParams) -> ProbabilityProfile:
    xs = np.asarray(xs, dtype=float)
    return ProbabilityProfile(
        t=float(t),
        xs=xs,
        values=np.asarray(probability(xs, kernel, t, p)),
        params=p,
        kernel_name=get_kernel(kernel).name,
    )


def decoherence_time(p: NaturalParams) -> float:
    """Gaussian-limit decoherence time ``sqrt(8) / (d_tilde sqrt(t_temp))``."""
    if p.t_temp == 0 or p.d_tilde == 0:
        raise NoDecoherenceTime("a(t) == 1 for all t; no finite decoherence time")
    return math.sqrt(8.0) / (p.d_tilde * math.sqrt(p.t_temp))


def attenuation_series(kernel, ts, p: NaturalParams) -> AttenuationSeries:
    """Exact a(t) next to its high-temperature Gaussian form exp(-(t/tau_d)^2).

    ``log_deviation`` is ``|ln a_exact / ln a_gauss - 1|`` (zero at t = 0);
    for the free kernel it equals ``1 - 1 / w2``.
    """
    ts = np.asarray(ts, dtype=float)
    if ts.ndim != 1 or np.any(ts < 0) or np.any(np.diff(ts) < 0):
        raise ValueError("ts must be a sorted 1-d sequence of non-negative times")
    tau = decoherence_time(p)
    log_exact = np.array([log_attenuation(kernel, t, p) for t in ts])
    log_gauss = -((ts / tau) ** 2)
    with np.errstate(invalid="ignore", divide="ignore"):
        dev = np.where(ts > 0, np.abs(log_exact / log_gauss - 1.0), 0.0)
    return AttenuationSeries(
        ts=ts,
        a_exact=np.exp(log_exact),
        a_gauss=np.exp(log_gauss),
        tau_d=tau,
        log_deviation=dev,
    )
