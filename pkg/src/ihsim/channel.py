"""Rayleigh block-fading channels with log-distance path loss.

Small-scale gains are i.i.d. CN(0, 1); an optional distance argument
scales them by the linear path-loss amplitude. All receivers share the
frequency-flat default in which one draw is replicated across subbands.
"""

from __future__ import annotations

import math

import numpy as np


def path_loss_db(distance_m: float) -> float:
    """Log-distance path loss 35.3 + 37.6 log10(d) in dB."""
    if distance_m <= 0:
        raise ValueError("distance must be positive")
    return 35.3 + 37.6 * math.log10(distance_m)


def path_loss_amplitude(distance_m: float | None) -> float:
    """Linear amplitude factor 10^(-PL/20); 1.0 when distance is None."""
    if distance_m is None:
        return 1.0
    return 10.0 ** (-path_loss_db(distance_m) / 20.0)


def complex_normal(rng: np.random.Generator, shape, var: float = 1.0) -> np.ndarray:
    """CN(0, var) samples: independent real/imag parts with variance var/2."""
    scale = math.sqrt(var / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def draw_channel(
    rng: np.random.Generator,
    n_rx: int,
    n_t: int,
    n_subbands: int = 1,
    distance_m: float | None = None,
    flat_subbands: bool = True,
) -> np.ndarray:
    """Channel tensor of shape (n_rx, n_t, n_subbands).

    flat_subbands replicates a single small-scale draw across subbands;
    otherwise each subband fades independently.
    """
    if min(n_rx, n_t, n_subbands) < 1:
        raise ValueError("dimensions must be positive")
    amp = path_loss_amplitude(distance_m)
    if flat_subbands:
        h = complex_normal(rng, (n_rx, n_t))
        gains = np.repeat(h[:, :, None], n_subbands, axis=2)
    else:
        gains = complex_normal(rng, (n_rx, n_t, n_subbands))
    return amp * gains


def draw_noise(
    rng: np.random.Generator, n_rx: int, n_subbands: int, var: float
) -> np.ndarray:
    """Per-subband receiver noise, CN(0, var) entries, shape (n_rx, n_subbands)."""
    if var < 0:
        raise ValueError("noise variance must be non-negative")
    return complex_normal(rng, (n_rx, n_subbands), var)


def reference_noise_variance(pt_watts: float, snr_db: float) -> float:
    """Single-subband noise variance implied by a transmit SNR P_T/N0 in dB."""
    return pt_watts / 10.0 ** (snr_db / 10.0)


def subband_noise_variance(pt_watts: float, snr_db: float, n_subbands: int) -> float:
    """Actual noise variance per subband branch.

    Each of the N subband branches processes the full multitone band, so
    the per-branch noise power grows linearly with N relative to the
    single-subband reference. This is what makes the pairwise error
    probability formulas exact for the simulated detector.
    """
    return n_subbands * reference_noise_variance(pt_watts, snr_db)


def dbm_to_watts(dbm: float) -> float:
    return 10.0 ** (dbm / 10.0) / 1000.0


def watts_to_dbm(watts: float) -> float:
    if watts <= 0:
        raise ValueError("power must be positive")
    return 10.0 * math.log10(watts * 1000.0)
