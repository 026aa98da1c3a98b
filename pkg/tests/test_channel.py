"""Channel draws, path loss, and noise variance conventions."""

import numpy as np
import pytest

from ihsim import (
    dbm_to_watts,
    draw_channel,
    path_loss_amplitude,
    path_loss_db,
    reference_noise_variance,
    subband_noise_variance,
    watts_to_dbm,
)
from ihsim.channel import complex_normal


def test_path_loss_reference_points():
    assert path_loss_db(1.0) == pytest.approx(35.3, abs=1e-12)
    assert path_loss_db(1.5) == pytest.approx(41.921031340493615, abs=1e-12)
    assert path_loss_db(10.0) == pytest.approx(72.9, abs=1e-12)


def test_path_loss_rejects_nonpositive():
    for d in (0.0, -1.0):
        with pytest.raises(ValueError):
            path_loss_db(d)


def test_path_loss_amplitude():
    assert path_loss_amplitude(None) == 1.0
    amp = path_loss_amplitude(1.5)
    assert amp**2 == pytest.approx(10 ** (-41.921031340493615 / 10), rel=1e-12)


def test_dbm_roundtrip():
    assert dbm_to_watts(30.0) == pytest.approx(1.0, rel=1e-12)
    assert dbm_to_watts(36.0) == pytest.approx(3.9810717055349722, rel=1e-12)
    for w in (0.001, 1.0, 3.2):
        assert dbm_to_watts(watts_to_dbm(w)) == pytest.approx(w, rel=1e-12)


def test_noise_variances():
    pt = dbm_to_watts(36.0)
    ref = reference_noise_variance(pt, 20.0)
    assert ref == pytest.approx(pt / 100.0, rel=1e-12)
    assert subband_noise_variance(pt, 20.0, 3) == pytest.approx(3 * ref, rel=1e-12)
    assert subband_noise_variance(pt, 20.0, 1) == pytest.approx(ref, rel=1e-12)


def test_complex_normal_statistics():
    rng = np.random.default_rng(0)
    z = complex_normal(rng, (200000,), 2.5)
    assert np.mean(z) == pytest.approx(0.0, abs=0.02)
    assert np.mean(np.abs(z) ** 2) == pytest.approx(2.5, rel=0.02)
    # circular symmetry: equal power in both quadratures
    assert np.var(z.real) == pytest.approx(1.25, rel=0.03)
    assert np.var(z.imag) == pytest.approx(1.25, rel=0.03)


def test_draw_channel_shapes_and_flatness():
    rng = np.random.default_rng(1)
    h = draw_channel(rng, 2, 4, 3)
    assert h.shape == (2, 4, 3)
    # flat by default: one draw shared across subbands
    assert np.array_equal(h[:, :, 0], h[:, :, 1])
    h_sel = draw_channel(rng, 2, 4, 3, flat_subbands=False)
    assert not np.array_equal(h_sel[:, :, 0], h_sel[:, :, 1])


def test_draw_channel_distance_scaling():
    rng = np.random.default_rng(2)
    h = draw_channel(rng, 4, 6, 1, distance_m=1.5)
    amp = path_loss_amplitude(1.5)
    assert np.mean(np.abs(h) ** 2) == pytest.approx(amp**2, rel=0.15)
