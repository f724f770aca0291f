"""Independent reference calculations used to validate the closed forms.

None of these routines calls into the kernels or the closed-form density;
each reaches its answer by a different route (complex wavefunctions,
FFT propagation, stochastic sampling, ODE integration).
"""
from __future__ import annotations

import math

import numpy as np
from scipy.integrate import solve_ivp

__all__ = [
    "two_gaussian_density",
    "free_gaussian_variance",
    "maxwell_boltzmann_msd",
    "ornstein_uhlenbeck_msd",
    "damped_response",
]


def two_gaussian_density(x, t: float, d: float):
    """|psi(x, t)|^2 for an equal superposition of two free Gaussians at ±d/2.

    Natural units (hbar = m = sigma = 1), zero temperature, no bath. Each
    branch is the textbook spreading packet
    ``(2 pi)^(-1/4) (1 + i t / 2)^(-1/2) exp(-(x - x0)^2 / (4 (1 + i t / 2)))``.
    """
    x = np.asarray(x, dtype=float)
    q = 1.0 + 0.5j * t
    pref = (2.0 * math.pi) ** -0.25 / np.sqrt(q)
    psi = pref * (np.exp(-((x - d / 2) ** 2) / (4 * q)) + np.exp(-((x + d / 2) ** 2) / (4 * q)))
    norm = 2.0 * (1.0 + math.exp(-d * d / 8.0))
    return np.abs(psi) ** 2 / norm


def free_gaussian_variance(ts, length: float = 1600.0, n: int = 2**15) -> np.ndarray:
    """Position variance of a free unit-width Gaussian, propagated on a grid.

    The wavefunction is evolved exactly in momentum space,
    ``psi(k, t) = psi(k, 0) exp(-i k^2 t / 2)``, and the variance is
    summed on the position grid.
    """
    x = (np.arange(n) - n // 2) * (length / n)
    dx = x[1] - x[0]
    k = 2.0 * np.pi * np.fft.fftfreq(n, d=dx)
    psi0 = (2.0 * np.pi) ** -0.25 * np.exp(-x * x / 4.0)
    phi0 = np.fft.fft(psi0)
    out = []
    for t in np.atleast_1d(ts):
        psi = np.fft.ifft(phi0 * np.exp(-0.5j * k * k * t))
        rho = np.abs(psi) ** 2
        mass = rho.sum() * dx
        mean = (x * rho).sum() * dx / mass
        out.append(((x - mean) ** 2 * rho).sum() * dx / mass)
    return np.array(out)


def maxwell_boltzmann_msd(t: float, t_temp: float, n_samples: int = 10**7, seed: int = 0,
                          chunk: int = 10**6):
    """Monte-Carlo <(v t)^2> over thermal velocities v ~ N(0, t_temp).

    Returns ``(mean, standard_error)``.
    """
    rng = np.random.default_rng(seed)
    total = total_sq = 0.0
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        v = rng.normal(0.0, math.sqrt(t_temp), m)
        disp2 = (v * t) ** 2
        total += disp2.sum()
        total_sq += (disp2 * disp2).sum()
        done += m
    mean = total / n_samples
    var = total_sq / n_samples - mean * mean
    return mean, math.sqrt(max(var, 0.0) / n_samples)


def ornstein_uhlenbeck_msd(t: float, t_temp: float, gamma: float, n_paths: int = 100_000,
                           n_steps: int = 400, seed: int = 0):
    """Simulated <(x(t) - x(0))^2> for a particle whose velocity is an OU process.

    dv = -gamma v dt + sqrt(2 gamma t_temp) dW, started from the stationary
    distribution. The velocity uses the exact AR(1) update and the position
    the trapezoid rule. Returns ``(mean, standard_error)``.
    """
    rng = np.random.default_rng(seed)
    h = t / n_steps
    decay = math.exp(-gamma * h)
    kick = math.sqrt(t_temp * (1.0 - decay * decay))
    v = rng.normal(0.0, math.sqrt(t_temp), n_paths)
    x = np.zeros(n_paths)
    for _ in range(n_steps):
        v_new = decay * v + kick * rng.standard_normal(n_paths)
        x += 0.5 * h * (v + v_new)
        v = v_new
    disp2 = x * x
    return float(disp2.mean()), float(disp2.std(ddof=1) / math.sqrt(n_paths))


def damped_response(t: float, gamma: float) -> float:
    """Displacement at time t after a unit impulse, from x'' + gamma x' = 0.

    This is the retarded Green function, i.e. ``[x(0), x(t)] / i`` in units
    where hbar = m = 1.
    """
    if t == 0:
        return 0.0
    sol = solve_ivp(lambda _, y: (y[1], -gamma * y[1]), (0.0, t), (0.0, 1.0),
                    method="DOP853", rtol=1e-12, atol=1e-14)
    return float(sol.y[0, -1])
