"""Power split, nullspace AN, and passband synthesis."""

import numpy as np
import pytest

from ihsim import (
    PowerSplit,
    compose_transmit,
    draw_channel,
    generate_an,
    nullspace_basis,
    passband_samples_eh,
    receive_baseband,
    subband_frequencies,
)
from ihsim.channel import complex_normal


def test_power_split_exact_budget():
    for rho in (0.0, 0.3, 0.5, 1.0):
        s = PowerSplit(4.0, rho)
        assert s.lambda_s2 + s.lambda_u2 == 4.0
        assert s.signal_scale(3) == pytest.approx(np.sqrt(s.lambda_s2 / 3))


def test_power_split_validation():
    with pytest.raises(ValueError):
        PowerSplit(0.0, 0.5)
    with pytest.raises(ValueError):
        PowerSplit(1.0, 1.5)


def test_nullspace_basis_properties():
    rng = np.random.default_rng(3)
    h = complex_normal(rng, (2, 6), 1.0)
    v = nullspace_basis(h)
    assert v.shape == (6, 4)
    assert np.allclose(v.conj().T @ v, np.eye(4), atol=1e-12)
    assert np.max(np.abs(h @ v)) < 1e-12


def test_nullspace_empty_when_full_rank():
    rng = np.random.default_rng(4)
    h = complex_normal(rng, (4, 4), 1.0)
    v = nullspace_basis(h)
    assert v.shape == (4, 0)
    with pytest.raises(ValueError):
        generate_an(rng, v, 1.0, 1)
    # zero AN budget is fine even without a nullspace
    eps = generate_an(rng, v, 0.0, 3)
    assert eps.shape == (4, 3)
    assert np.all(eps == 0)


def test_an_power_and_invisibility():
    rng = np.random.default_rng(5)
    h = complex_normal(rng, (2, 5), 1.0)
    v = nullspace_basis(h)
    lambda_u2 = 2.0
    n_sub = 3
    trials = 4000
    total = 0.0
    worst = 0.0
    for _ in range(trials):
        eps = generate_an(rng, v, lambda_u2, n_sub)
        total += np.sum(np.abs(eps) ** 2)
        worst = max(worst, np.max(np.abs(h @ eps)) / np.linalg.norm(eps))
    # E[sum_n eps_n^H eps_n] = lambda_u2, split evenly over subbands
    assert total / trials == pytest.approx(lambda_u2, rel=0.05)
    assert worst < 1e-12


def test_compose_transmit_replicates_subbands():
    split = PowerSplit(2.0, 0.5)
    xw = compose_transmit(np.array([1.0, 0.0, 0.0]), split, 3)
    assert xw.shape == (3, 3)
    assert np.allclose(xw[0], split.signal_scale(3))
    assert np.all(xw[1:] == 0)


def test_receive_baseband_shape():
    rng = np.random.default_rng(6)
    gains = draw_channel(rng, 2, 4, 3)
    w = complex_normal(rng, (4, 3), 1.0)
    eps = np.zeros((4, 3), dtype=complex)
    noise = complex_normal(rng, (2, 3), 0.1)
    y = receive_baseband(gains, w, eps, noise)
    assert y.shape == (2, 3)
    direct = np.stack([gains[:, :, n] @ w[:, n] for n in range(3)], axis=1) + noise
    assert np.allclose(y, direct)


def test_subband_frequencies():
    f = subband_frequencies(1e5, 1e3, 3)
    assert np.array_equal(f, [100000.0, 101000.0, 102000.0])


def test_passband_single_tone_moments():
    # one antenna, one tone of amplitude A: m2 = A^2/2, m4 = 3 A^4/8
    a = 2.0
    gains = np.ones((1, 1, 1), dtype=complex)
    w = np.array([[a]], dtype=complex)
    eps = np.zeros((1, 1), dtype=complex)
    y = passband_samples_eh(gains, w, eps, 1e5, 1e3, 1e6, 1e-3)
    m2 = np.mean(y**2)
    m4 = np.mean(y**4)
    assert m2 == pytest.approx(a**2 / 2, rel=1e-9)
    assert m4 == pytest.approx(3 * a**4 / 8, rel=1e-9)


def test_passband_beat_period_makes_moments_exact():
    # two tones, rectangle rule over one full beat period
    gains = np.ones((1, 1, 2), dtype=complex)
    w = np.array([[1.0, 1.0]], dtype=complex)
    eps = np.zeros((1, 2), dtype=complex)
    y = passband_samples_eh(gains, w, eps, 1e5, 1e3, 2e6, 1e-3)
    # sum of two unit tones: m2 = 1, m4 = 9/4 (includes the cross term)
    assert np.mean(y**2) == pytest.approx(1.0, rel=1e-9)
    assert np.mean(y**4) == pytest.approx(2.25, rel=1e-9)


def test_passband_validation():
    gains = np.ones((1, 1, 2), dtype=complex)
    w = np.ones((1, 2), dtype=complex)
    eps = np.zeros((1, 2), dtype=complex)
    with pytest.raises(ValueError):
        passband_samples_eh(gains, w, eps, 1e5, 1e3, 5e5, 1e-3)  # rate too low
    with pytest.raises(ValueError):
        passband_samples_eh(gains, w, eps, 1e5, 1e3, 2e6, 1.5e-3)  # partial beat


def test_an_rides_the_first_carrier():
    # pure AN with a flat unit channel: all energy at f1 regardless of N
    gains = np.ones((1, 1, 3), dtype=complex)
    w = np.zeros((1, 3), dtype=complex)
    eps = np.full((1, 3), 0.5 + 0.0j)
    y = passband_samples_eh(gains, w, eps, 1e5, 1e3, 2e6, 1e-3)
    # 3 x 0.5 amplitude summed on one tone: m2 = (1.5)^2 / 2
    assert np.mean(y**2) == pytest.approx(1.125, rel=1e-9)
