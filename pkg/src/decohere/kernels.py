"""Time kernels: mean-square displacement s(t) and commutator amplitude c(t).

Both are in natural units (sigma^2). ``c(t)`` is the real number
``[x(0), x(t)] / i``, so every downstream formula stays real.

Two kernels are shipped:

``free``
    No bath coupling. ``s = t_temp * t**2`` (thermal velocity spread times
    t, squared) and ``c = t`` (hbar t / m).
``ohmic-ht``
    Extension, not part of the closed-form free-particle result: classical
    high-temperature Ohmic friction. ``s = 2 t_temp / g^2 (g t - 1 + exp(-g t))``
    and ``c = (1 - exp(-g t)) / g``. Reduces to ``free`` as ``g t -> 0``.
"""
from __future__ import annotations

import numpy as np

from .exceptions import DomainError
from .params import NaturalParams

__all__ = [
    "MotionKernel",
    "FreeParticleKernel",
    "OhmicHighTKernel",
    "KERNELS",
    "EXTENSION_NOTE",
    "get_kernel",
    "msd",
    "commutator_amp",
]

EXTENSION_NOTE = (
    "extension kernel: high-temperature Ohmic Langevin forms, "
    "not part of the closed-form free-particle result"
)


def _check_time(t):
    t = np.asarray(t, dtype=float)
    if np.any(t < 0) or np.any(np.isnan(t)):
        raise DomainError("time must be >= 0")
    return t


def _scalar_or_array(value):
    return float(value) if np.ndim(value) == 0 else value


class MotionKernel:
    """Contract for the pair ``s(t)``, ``c(t)``.

    Subclasses implement ``_msd`` and ``_commutator`` on validated float
    arrays; the public methods accept scalars or arrays and reject t < 0.
    """

    name: str = ""
    is_extension: bool = False

    def msd(self, t, p: NaturalParams):
        return _scalar_or_array(self._msd(_check_time(t), p))

    def commutator(self, t, p: NaturalParams):
        return _scalar_or_array(self._commutator(_check_time(t), p))

    def _msd(self, t: np.ndarray, p: NaturalParams) -> np.ndarray:
        raise NotImplementedError

    def _commutator(self, t: np.ndarray, p: NaturalParams) -> np.ndarray:
        raise NotImplementedError

    def __repr__(self):
        return f"{type(self).__name__}()"


class FreeParticleKernel(MotionKernel):
    name = "free"

    def _msd(self, t, p):
        return p.t_temp * t * t

    def _commutator(self, t, p):
        return t.copy()


def _msd_shape(x):
    # (x - 1 + exp(-x)) / x^2, series below x = 1e-3
    x = np.asarray(x, dtype=float)
    xs = np.atleast_1d(x)
    out = np.empty_like(xs)
    small = xs < 1e-3
    big = ~small
    out[big] = (xs[big] + np.expm1(-xs[big])) / (xs[big] * xs[big])
    y = xs[small]
    out[small] = 0.5 - y / 6.0 + y * y / 24.0 - y**3 / 120.0
    return out.reshape(x.shape)


class OhmicHighTKernel(MotionKernel):
    """High-temperature Ohmic friction (kT >> hbar gamma), an extension kernel.

    Uses ``p.g_tilde``; at ``g_tilde == 0`` it returns the free forms.
    """

    name = "ohmic-ht"
    is_extension = True

    def _msd(self, t, p):
        return 2.0 * p.t_temp * t * t * _msd_shape(p.g_tilde * t)

    def _commutator(self, t, p):
        x = p.g_tilde * t
        small = x < 1e-3
        out = t * (1.0 - x / 2.0 + x * x / 6.0 - x**3 / 24.0)
        if np.any(~small):
            # divide by g directly out here so c saturates monotonically at 1/g
            out = np.where(small, out, -np.expm1(-x) / (p.g_tilde if p.g_tilde > 0 else 1.0))
        return out


KERNELS = {k.name: k for k in (FreeParticleKernel(), OhmicHighTKernel())}


def get_kernel(name: str | MotionKernel) -> MotionKernel:
    if isinstance(name, MotionKernel):
        return name
    try:
        return KERNELS[name]
    except KeyError:
        raise ValueError(f"unknown kernel {name!r}; choose from {sorted(KERNELS)}") from None


def msd(kernel, t, p: NaturalParams):
    """Mean-square displacement ``<(x(t) - x(0))^2>`` in units of sigma^2."""
    return get_kernel(kernel).msd(t, p)


def commutator_amp(kernel, t, p: NaturalParams):
    """``[x(0), x(t)] / i`` in units of sigma^2."""
    return get_kernel(kernel).commutator(t, p)
