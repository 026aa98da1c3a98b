"""Discrete-input mutual information and ergodic secrecy rates.

MI is estimated with the standard Monte Carlo evaluation of the
equiprobable discrete-input formula: for effective noise-free receive
vectors h_l (transmit scaling included) and noise variance sigma2 per
complex entry,

    I = log2 L - (1/L) sum_l E_z[ log2 sum_r exp(-(||d_lr + z||^2 - ||z||^2) / sigma2) ]

with d_lr = h_l - h_r. Multi-subband observations concatenate their
per-subband components; the eavesdropper's channels are pre-whitened by
C^(-1/2) so its residual noise is white with unit variance.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp

from .channel import complex_normal, draw_channel
from .codebook import Codebook
from .error_rates import eve_covariance, inv_sqrt_hermitian
from .waveform import PowerSplit, nullspace_basis


@dataclass(frozen=True)
class MiEstimate:
    value: float  # clamped to [0, log2 L]
    std_err: float
    n_noise: int
    n_channels: int
    raw_value: float


def effective_channels(
    codebook: Codebook,
    gains: np.ndarray,
    scale: float,
    whiten: np.ndarray | None = None,
) -> np.ndarray:
    """Noise-free receive vectors per label, shape (L, n_rx * N).

    Subband components are concatenated; whiten, when given, is a
    per-subband stack (n_rx, n_rx, N) applied before concatenation.
    """
    gains = np.asarray(gains)
    x = codebook.tx_matrix()
    n_subbands = gains.shape[2]
    blocks = []
    for n in range(n_subbands):
        m = scale * gains[:, :, n]
        if whiten is not None:
            m = np.asarray(whiten)[:, :, n] @ m
        blocks.append((m @ x).T)  # (L, n_rx)
    return np.concatenate(blocks, axis=1)


def mutual_info(
    eff: np.ndarray, sigma2: float, n_noise: int, rng: np.random.Generator
) -> MiEstimate:
    """MI of an equiprobable discrete input over an AWGN vector channel.

    eff holds the noise-free receive vectors as rows; sigma2 is the
    per-entry complex noise variance of the (possibly whitened)
    observation.
    """
    eff = np.asarray(eff, dtype=complex)
    n_words, dim = eff.shape
    if n_words < 2:
        raise ValueError("need at least two codewords")
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    if n_noise < 2:
        raise ValueError("n_noise must be at least 2")

    d = eff[:, None, :] - eff[None, :, :]  # (L, L, dim) differences
    d2 = np.sum(np.abs(d) ** 2, axis=2)  # (L, L)
    off = d2 + np.where(np.eye(n_words, dtype=bool), np.inf, 0.0)
    if off.min() < 1e-12 * max(d2.max(), 1.0):
        warnings.warn(
            "duplicate effective channels: MI saturates below log2(L)",
            RuntimeWarning,
        )

    log2e = 1.0 / math.log(2.0)
    samples = np.empty((n_words, n_noise))
    for l in range(n_words):
        z = complex_normal(rng, (n_noise, dim), sigma2)
        # exponent_sr = -(||d_lr||^2 + 2 Re<d_lr, z_s>) / sigma2
        cross = 2.0 * np.real(z @ d[l].conj().T)  # (S, L)
        expo = -(d2[l][None, :] + cross) / sigma2
        samples[l] = logsumexp(expo, axis=1) * log2e
    raw = math.log2(n_words) - float(samples.mean())
    std_err = float(samples.std(ddof=1) / math.sqrt(samples.size))
    value = min(max(raw, 0.0), math.log2(n_words))
    return MiEstimate(value, std_err, n_noise, 1, raw)


def secrecy_rate(mi_ir: MiEstimate, mi_eve: MiEstimate) -> float:
    """Nonnegative secrecy rate max(0, I_IR - I_Eve)."""
    return max(0.0, mi_ir.value - mi_eve.value)


@dataclass(frozen=True)
class EsrEstimate:
    esr_bits: float
    std_err: float
    n_channels: int
    mi_ir_mean: float
    mi_eve_mean: float


def secrecy_rate_draws(
    codebook: Codebook,
    split: PowerSplit,
    sigma2: float,
    n_subbands: int,
    n_ir: int,
    n_eve: int,
    n_channels: int,
    n_noise: int,
    rng: np.random.Generator,
    d_ir: float | None = None,
    d_eve: float | None = None,
    flat_subbands: bool = True,
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Per-channel-draw secrecy rates and the two MI components.

    Per draw, the legitimate MI uses the raw channel (the AN lies in its
    nullspace, so only thermal noise remains) while the eavesdropper MI
    uses covariance-whitened effective channels with unit noise. sigma2
    is the single-subband reference variance; the actual per-subband
    branch variance is N * sigma2.
    """
    spec = codebook.spec
    scale = split.signal_scale(n_subbands)
    noise_var = n_subbands * sigma2
    rates = np.empty(n_channels)
    mi_ir_all = np.empty(n_channels)
    mi_eve_all = np.empty(n_channels)
    for i in range(n_channels):
        h_ir = draw_channel(rng, n_ir, spec.n_t, n_subbands, d_ir, flat_subbands)
        g_eve = draw_channel(rng, n_eve, spec.n_t, n_subbands, d_eve, flat_subbands)
        eff_ir = effective_channels(codebook, h_ir, scale)
        mi_ir = mutual_info(eff_ir, noise_var, n_noise, rng)

        whiten = np.empty((n_eve, n_eve, n_subbands), dtype=complex)
        for n in range(n_subbands):
            basis = nullspace_basis(h_ir[:, :, n])
            c = eve_covariance(
                g_eve[:, :, n], basis, split.lambda_u2, noise_var, n_subbands
            )
            whiten[:, :, n] = inv_sqrt_hermitian(c)
        eff_eve = effective_channels(codebook, g_eve, scale, whiten)
        mi_eve = mutual_info(eff_eve, 1.0, n_noise, rng)

        rates[i] = secrecy_rate(mi_ir, mi_eve)
        mi_ir_all[i] = mi_ir.value
        mi_eve_all[i] = mi_eve.value
    return rates, mi_ir_all, mi_eve_all


def ergodic_secrecy_rate(
    codebook: Codebook,
    split: PowerSplit,
    sigma2: float,
    n_subbands: int,
    n_ir: int,
    n_eve: int,
    n_channels: int,
    n_noise: int,
    rng: np.random.Generator,
    d_ir: float | None = None,
    d_eve: float | None = None,
    flat_subbands: bool = True,
) -> EsrEstimate:
    """Mean secrecy rate over Rayleigh channel draws."""
    rates, mi_ir_all, mi_eve_all = secrecy_rate_draws(
        codebook,
        split,
        sigma2,
        n_subbands,
        n_ir,
        n_eve,
        n_channels,
        n_noise,
        rng,
        d_ir,
        d_eve,
        flat_subbands,
    )
    std_err = float(rates.std(ddof=1) / math.sqrt(n_channels)) if n_channels > 1 else 0.0
    return EsrEstimate(
        float(rates.mean()),
        std_err,
        n_channels,
        float(mi_ir_all.mean()),
        float(mi_eve_all.mean()),
    )
