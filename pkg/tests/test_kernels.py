import math

import numpy as np
import pytest

from decohere import NaturalParams, commutator_amp, get_kernel, msd
from decohere.exceptions import DomainError
from decohere.kernels import FreeParticleKernel, OhmicHighTKernel
from decohere.oracles import (
    damped_response,
    free_gaussian_variance,
    maxwell_boltzmann_msd,
    ornstein_uhlenbeck_msd,
)

KERNEL_NAMES = ["free", "ohmic-ht"]


def test_registry():
    assert isinstance(get_kernel("free"), FreeParticleKernel)
    assert isinstance(get_kernel("ohmic-ht"), OhmicHighTKernel)
    assert get_kernel("ohmic-ht").is_extension and not get_kernel("free").is_extension
    with pytest.raises(ValueError):
        get_kernel("markov")


@pytest.mark.parametrize("name", KERNEL_NAMES)
def test_zero_at_origin(name):
    p = NaturalParams(3.0, 2.5, 0.7)
    assert msd(name, 0.0, p) == 0.0
    assert commutator_amp(name, 0.0, p) == 0.0


@pytest.mark.parametrize("name", KERNEL_NAMES)
def test_negative_time_rejected(name):
    with pytest.raises(DomainError):
        msd(name, -1e-9, NaturalParams(1.0))
    with pytest.raises(DomainError):
        commutator_amp(name, [0.0, -1.0], NaturalParams(1.0))


def test_free_kernel_fig1_operating_point():
    p = NaturalParams(20.0, 1 / 16)
    assert msd("free", 8.0, p) == 4.0
    assert commutator_amp("free", 8.0, p) == 8.0


def test_free_msd_matches_maxwell_boltzmann():
    t, t_temp = 8.0, 1 / 16
    mean, se = maxwell_boltzmann_msd(t, t_temp, n_samples=10**7, seed=1)
    exact = msd("free", t, NaturalParams(20.0, t_temp))
    assert abs(mean - exact) < 5 * se
    assert mean == pytest.approx(exact, rel=5e-3)


def test_free_commutator_pins_quantum_spreading():
    # with s = 0 and c = t the packet variance is 1 + t^2 / 4; check against FFT propagation
    ts = np.linspace(0.0, 40.0, 21)
    c = commutator_amp("free", ts, NaturalParams(1.0))
    numeric = free_gaussian_variance(ts)
    np.testing.assert_allclose(1.0 + c**2 / 4.0, numeric, rtol=1e-6)


def test_ohmic_small_damping_series():
    p = NaturalParams(1.0, 1.0, 0.01)
    t = 1.0
    assert msd("ohmic-ht", t, p) == pytest.approx(t**2 * (1 - 0.01 / 3), rel=1e-5)


def test_ohmic_small_argument_branch_is_continuous():
    p = NaturalParams(1.0, 1.0, 1.0)
    t = np.array([1e-3 * (1 - 1e-9), 1e-3 * (1 + 1e-9)])
    s = msd("ohmic-ht", t, p)
    assert s[1] / s[0] == pytest.approx((t[1] / t[0]) ** 2, rel=1e-9)


def test_ohmic_matches_ou_simulation():
    p = NaturalParams(1.0, 1.0, 1.0)
    mean, se = ornstein_uhlenbeck_msd(2.0, p.t_temp, p.g_tilde, n_paths=100_000, n_steps=400, seed=3)
    assert abs(mean - msd("ohmic-ht", 2.0, p)) < 3 * se


@pytest.mark.parametrize("gamma, t", [(0.5, 0.3), (2.0, 3.0), (7.0, 0.05)])
def test_ohmic_commutator_is_damped_green_function(gamma, t):
    c = commutator_amp("ohmic-ht", t, NaturalParams(1.0, 1.0, gamma))
    assert c == pytest.approx(damped_response(t, gamma), rel=1e-9)


def test_ohmic_commutator_saturates():
    t = 5.0
    for g in (1e2, 1e4):
        assert commutator_amp("ohmic-ht", t, NaturalParams(1.0, 1.0, g)) == pytest.approx(1 / g, rel=1e-12)


@pytest.mark.parametrize("g", [1e-4, 1e-2, 0.3, 1.0])
def test_ohmic_converges_to_free(g):
    ts = np.linspace(1e-3, 0.1, 200) / g
    p = NaturalParams(1.0, 2.0, g)
    s_rel = np.abs(msd("ohmic-ht", ts, p) / msd("free", ts, p) - 1)
    c_rel = np.abs(commutator_amp("ohmic-ht", ts, p) / commutator_amp("free", ts, p) - 1)
    assert np.all(s_rel <= g * ts / 2)
    assert np.all(c_rel <= g * ts / 2)


def test_ohmic_zero_damping_is_free():
    p = NaturalParams(1.0, 3.0, 0.0)
    ts = np.linspace(0, 10, 11)
    np.testing.assert_array_equal(msd("ohmic-ht", ts, p), msd("free", ts, p))
    np.testing.assert_array_equal(commutator_amp("ohmic-ht", ts, p), ts)


@pytest.mark.parametrize("name", KERNEL_NAMES)
@pytest.mark.parametrize("t_temp, g", [(0.0, 0.5), (1.0, 0.1), (50.0, 3.0)])
def test_monotone_and_nonnegative(name, t_temp, g):
    ts = np.linspace(0.0, 100.0, 20001)
    p = NaturalParams(5.0, t_temp, g)
    s = msd(name, ts, p)
    c = commutator_amp(name, ts, p)
    assert np.all(s >= 0) and np.all(c >= 0)
    assert np.all(np.diff(s) >= 0)
    assert np.all(np.diff(c) >= 0)


def test_scalar_in_scalar_out():
    assert isinstance(msd("free", 2.0, NaturalParams(1.0, 1.0)), float)
    assert math.isclose(commutator_amp("free", 2, NaturalParams(1.0)), 2.0)
