"""Diagnostics built on top of the closed-form density.

Quadrature normalization, fringe visibility, the three-curve reference
figure, the Gaussian-limit comparison and one-axis parameter sweeps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .exceptions import NoDecoherenceTime, OracleFailure, ResolutionError
from .kernels import get_kernel
from .params import DEFAULT_THRESHOLD, NaturalParams, classify_regime, mixing_time
from .superposition import (
    ProbabilityProfile,
    attenuation,
    attenuation_series,
    decoherence_time,
    fringe_wavenumber,
    normalization_constant,
    p0,
    packet_state,
    probability,
    profile,
)

__all__ = [
    "QuadratureReport",
    "VisibilityReport",
    "Figure1Dataset",
    "GaussianLimitReport",
    "SweepPoint",
    "SweepResult",
    "SWEEP_AXES",
    "FIGURE1_LABELS",
    "quadrature_halfwidth",
    "normalization_check",
    "interference_integral",
    "fringe_visibility",
    "fringe_amplitude",
    "build_figure1",
    "gaussian_limit_report",
    "sweep",
]

MIN_POINTS_PER_FRINGE = 10
MIN_FRINGES = 2.0

FIGURE1_D_TILDE = 20.0
FIGURE1_HALFWIDTH = 30.0
FIGURE1_POINTS = 2401
# label -> d / lambda_th; 0 means T = 0
FIGURE1_LABELS = {"d/λ=5": 5.0, "d/λ=1": 1.0, "T=0": 0.0}

SWEEP_AXES = ("d_over_lambda", "d_over_sigma", "gamma_tilde", "t")


@dataclass(frozen=True)
class QuadratureReport:
    value: float
    error_estimate: float
    tol: float
    passed: bool
    n_evaluations: int


def quadrature_halfwidth(st, p: NaturalParams) -> float:
    return 0.5 * p.d_tilde + 12.0 * math.sqrt(st.w2)


def normalization_check(kernel, t: float, p: NaturalParams, tol: float = 1e-9) -> QuadratureReport:
    """Integrate P over x by adaptive Gauss-Kronrod quadrature.

    The line is truncated at ``±(d/2 + 12 w)``, which drops less than 1e-30
    of the mass, and split at the packet centres and the origin. Raises
    :class:`OracleFailure` if any panel fails to converge or the combined
    error estimate is not below ``tol / 10``.
    """
    if not tol > 0:
        raise ValueError("tol must be > 0")
    st = packet_state(kernel, t, p)
    half = 0.5 * p.d_tilde
    edge = quadrature_halfwidth(st, p)
    breaks = sorted({-edge, -half, 0.0, half, edge})
    n_panels = len(breaks) - 1
    total = err = 0.0
    nev = 0

    def f(x):
        return probability(x, kernel, t, p)

    for lo, hi in zip(breaks[:-1], breaks[1:]):
        val, e, info, *msg = integrate.quad(
            f, lo, hi, epsabs=tol / (20.0 * n_panels), epsrel=0.0, limit=1000, full_output=1
        )
        if msg:
            raise OracleFailure(f"quadrature did not converge on [{lo:g}, {hi:g}]: {msg[0]}")
        total += val
        err += e
        nev += info["neval"]
    if not err < tol / 10.0:
        raise OracleFailure(f"quadrature error estimate {err:.3g} exceeds tol/10 = {tol / 10:.3g}")
    return QuadratureReport(total, err, tol, abs(total - 1.0) < tol, nev)


def interference_integral(kernel, t: float, p: NaturalParams, epsrel: float = 1e-12) -> float:
    """x-integral of the interference term alone (prefactor N included).

    Uses cosine-weighted quadrature (QAWO) so the fringe oscillation is
    integrated analytically against the Gaussian envelope.
    """
    st = packet_state(kernel, t, p)
    n = normalization_constant(p)
    amp = 2.0 * n * math.exp(-p.d_tilde**2 / (8.0 * st.w2)) * attenuation(kernel, t, p)
    if amp == 0.0:
        return 0.0
    k = fringe_wavenumber(st, p)
    edge = 12.0 * math.sqrt(st.w2)

    def env(x):
        return p0(x, st)

    opts = dict(epsabs=0.0, epsrel=epsrel, limit=1000, full_output=1)
    if k == 0.0:
        val, _, _, *msg = integrate.quad(env, 0.0, edge, **opts)
    else:
        val, _, _, *msg = integrate.quad(env, 0.0, edge, weight="cos", wvar=k, **opts)
    if msg:
        raise OracleFailure(f"interference integral did not converge: {msg[0]}")
    return 2.0 * amp * val


@dataclass(frozen=True)
class VisibilityReport:
    t: float
    visibility: float
    a_predicted: float
    window: tuple
    n_fringes_in_window: float
    status: str = "ok"


def _background(prof: ProbabilityProfile):
    """Incoherent single-packet sum and the geometric mean of the two packets.

    This is what is recorded with either slit blocked; it carries no
    information about the interference term.
    """
    kernel = get_kernel(prof.kernel_name)
    st = packet_state(kernel, prof.t, prof.params)
    n = normalization_constant(prof.params)
    half = 0.5 * prof.params.d_tilde
    left = n * p0(prof.xs - half, st)
    right = n * p0(prof.xs + half, st)
    return left + right, np.sqrt(left * right), st


def fringe_visibility(prof: ProbabilityProfile, window_half_width: float | None = None) -> VisibilityReport:
    """Fringe contrast around x = 0 after dividing out the packet envelopes.

    The measured profile is referenced to the incoherent background ``B``
    and the geometric mean ``G`` of the two single-packet densities,
    ``F = 1 + (P - B) / (2 G)``, and the visibility is
    ``(max F - min F) / (max F + min F)`` over ``|x| <= window``. For
    unequal or sloping envelopes the raw ``P`` contrast is biased; ``F`` is
    the pattern the two packets would give if their envelopes were equal.

    Default window: ``min(d / 4, 4 w)``. Fewer than two fringes in the
    window gives ``status="insufficient-fringes"`` and a NaN visibility;
    fewer than ten samples per fringe raises :class:`ResolutionError`.
    """
    p = prof.params
    background, geo, st = _background(prof)
    a_pred = attenuation(prof.kernel_name, prof.t, p)
    if window_half_width is None:
        window_half_width = min(0.25 * p.d_tilde, 4.0 * math.sqrt(st.w2))
    w = float(window_half_width)
    k = fringe_wavenumber(st, p)
    period = 2.0 * math.pi / k if k > 0 else math.inf
    n_fringes = 2.0 * w / period
    window = (-w, w)

    mask = np.abs(prof.xs) <= w
    if n_fringes < MIN_FRINGES or mask.sum() < 3:
        return VisibilityReport(prof.t, math.nan, a_pred, window, n_fringes, "insufficient-fringes")
    spacing = float(np.max(np.diff(prof.xs[mask])))
    if period / spacing < MIN_POINTS_PER_FRINGE:
        raise ResolutionError(
            f"grid spacing {spacing:.3g} gives {period / spacing:.1f} points per fringe "
            f"(need {MIN_POINTS_PER_FRINGE})"
        )
    flat = 1.0 + (prof.values[mask] - background[mask]) / (2.0 * geo[mask])
    hi, lo = float(flat.max()), float(flat.min())
    vis = min(max((hi - lo) / (hi + lo), 0.0), 1.0)
    return VisibilityReport(prof.t, vis, a_pred, window, n_fringes)


def fringe_amplitude(prof: ProbabilityProfile) -> float:
    """Height of the central fringe above the incoherent background, in sigma*P units."""
    i0 = int(np.argmin(np.abs(prof.xs)))
    background, _, _ = _background(prof)
    return float(prof.values[i0] - background[i0])


@dataclass
class Figure1Dataset:
    xs: np.ndarray
    t: float
    d_tilde: float
    curves: dict

    def __getitem__(self, label) -> ProbabilityProfile:
        return self.curves[label]


def build_figure1(n_points: int = FIGURE1_POINTS, halfwidth: float = FIGURE1_HALFWIDTH) -> Figure1Dataset:
    """Three profiles at d = 20 sigma, no damping, t = t_mix / 5.

    Curves are labelled by d / lambda_th: 5 (no visible fringes), 1 and
    T = 0 (the two nearly coincident curves).
    """
    xs = np.linspace(-halfwidth, halfwidth, n_points)
    free = get_kernel("free")
    curves = {}
    t = None
    for label, ratio in FIGURE1_LABELS.items():
        p = NaturalParams.from_ratio(FIGURE1_D_TILDE, ratio)
        t = mixing_time(p) / 5.0
        curves[label] = profile(xs, free, t, p)
    return Figure1Dataset(xs=xs, t=t, d_tilde=FIGURE1_D_TILDE, curves=curves)


@dataclass
class GaussianLimitReport:
    ts: np.ndarray
    a_exact: np.ndarray
    a_gauss: np.ndarray
    deviation: np.ndarray
    tau_d: float
    tolerance: float

    @property
    def within(self) -> np.ndarray:
        return self.deviation < self.tolerance

    @property
    def valid_until(self) -> float:
        """Largest sampled t up to which every deviation is below tolerance."""
        bad = np.flatnonzero(~self.within)
        if bad.size == 0:
            return float(self.ts[-1])
        return float(self.ts[bad[0] - 1]) if bad[0] > 0 else 0.0

    def rows(self):
        return zip(self.ts, self.a_exact, self.a_gauss, self.deviation)


def gaussian_limit_report(p: NaturalParams, kernel="free", t_max: float | None = None, n: int = 101,
                          tolerance: float = 0.01) -> GaussianLimitReport:
    """Compare the exact a(t) with exp(-(t/tau_d)^2) on ``n`` times in [0, t_max].

    The deviation column is ``|ln a_exact / ln a_gauss - 1|``. ``t_max``
    defaults to ``2 tau_d``.
    """
    tau = decoherence_time(p)
    if t_max is None:
        t_max = 2.0 * tau
    ser = attenuation_series(kernel, np.linspace(0.0, t_max, n), p)
    return GaussianLimitReport(ser.ts, ser.a_exact, ser.a_gauss, ser.log_deviation, tau, tolerance)


@dataclass(frozen=True)
class SweepPoint:
    value: float
    params: NaturalParams
    t: float
    a: float
    visibility: float
    tau_d: float
    in_regime: bool
    normalization: QuadratureReport


@dataclass
class SweepResult:
    axis: str
    values: np.ndarray
    points: list
    kernel_name: str

    @property
    def a(self) -> np.ndarray:
        return np.array([pt.a for pt in self.points])

    @property
    def visibility(self) -> np.ndarray:
        return np.array([pt.visibility for pt in self.points])

    @property
    def tau_d(self) -> np.ndarray:
        return np.array([pt.tau_d for pt in self.points])


def _visibility_at(kernel, t, p):
    st = packet_state(kernel, t, p)
    w = min(0.25 * p.d_tilde, 4.0 * math.sqrt(st.w2))
    k = fringe_wavenumber(st, p)
    if w <= 0 or k <= 0:
        return math.nan
    period = 2.0 * math.pi / k
    n = int(min(max(401, math.ceil(2.0 * w / period * 40.0)), 400_001))
    n += 1 - n % 2
    return fringe_visibility(profile(np.linspace(-w, w, n), kernel, t, p), w).visibility


def sweep(axis: str, values, base: NaturalParams, kernel="free", t: float | None = None,
          t_over_tmix: float = 0.2, threshold: float = DEFAULT_THRESHOLD,
          tol: float = 1e-9) -> SweepResult:
    """Vary one parameter, holding the rest of ``base`` fixed.

    ``d_over_lambda`` moves the temperature at fixed d_tilde;
    ``d_over_sigma`` moves d_tilde at fixed t_temp; ``gamma_tilde`` moves
    the damping; ``t`` moves the evaluation time. Unless ``t`` is given (or
    the axis is ``t``), each point is evaluated at ``t_over_tmix * t_mix``.
    Every point is checked for normalization; a failure raises
    :class:`OracleFailure`.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"unknown sweep axis {axis!r}; choose from {SWEEP_AXES}")
    values = np.asarray(values, dtype=float)
    if values.ndim != 1 or values.size == 0 or not np.all(np.isfinite(values)):
        raise ValueError("sweep values must be a non-empty finite 1-d sequence")
    if np.any(np.diff(values) <= 0):
        raise ValueError("sweep values must be strictly increasing")
    kern = get_kernel(kernel)
    points = []
    for v in values:
        if axis == "d_over_lambda":
            p = NaturalParams.from_ratio(base.d_tilde, v, base.g_tilde)
        elif axis == "d_over_sigma":
            p = NaturalParams(v, base.t_temp, base.g_tilde)
        elif axis == "gamma_tilde":
            p = NaturalParams(base.d_tilde, base.t_temp, v)
        else:
            p = base
        if axis == "t":
            tt = float(v)
        elif t is not None:
            tt = float(t)
        else:
            tt = t_over_tmix * mixing_time(p)
        norm = normalization_check(kern, tt, p, tol)
        if not norm.passed:
            raise OracleFailure(f"normalization failed at {axis}={v:g}: integral {norm.value!r}")
        try:
            tau = decoherence_time(p)
        except NoDecoherenceTime:
            tau = math.inf
        points.append(SweepPoint(
            value=float(v),
            params=p,
            t=tt,
            a=attenuation(kern, tt, p),
            visibility=_visibility_at(kern, tt, p),
            tau_d=tau,
            in_regime=classify_regime(p, threshold).in_decoherence_regime,
            normalization=norm,
        ))
    return SweepResult(axis, values, points, kern.name)
