"""Multitone waveform composition, power splitting and artificial noise.

The transmitter spends a fraction rho of its power budget on an
artificial-noise (AN) component confined to the nullspace of the
legitimate receiver's channel; the remainder carries the index-modulated
codeword replicated on every subband. At the energy harvester the signal
is observed as a real passband waveform with the AN riding the first
carrier.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import complex_normal

SV_RTOL = 1e-10  # singular values below max(sv) * SV_RTOL count as zero


@dataclass(frozen=True)
class PowerSplit:
    """Split of the transmit budget p_t into signal and AN parts."""

    p_t: float
    rho: float

    def __post_init__(self):
        if self.p_t <= 0:
            raise ValueError("p_t must be positive")
        if not 0.0 <= self.rho <= 1.0:
            raise ValueError("rho must lie in [0, 1]")

    @property
    def lambda_u2(self) -> float:
        return self.rho * self.p_t

    @property
    def lambda_s2(self) -> float:
        # Complement of lambda_u2 so the two parts sum to p_t exactly.
        return self.p_t - self.rho * self.p_t

    def signal_scale(self, n_subbands: int) -> float:
        """Per-subband codeword amplitude sqrt(lambda_s^2 / N)."""
        return math.sqrt(self.lambda_s2 / n_subbands)


def nullspace_basis(h: np.ndarray) -> np.ndarray:
    """Orthonormal basis of the right nullspace of h, shape (n_t, n_t - r).

    The rank r is determined from the SVD with a relative singular-value
    threshold. An empty (n_t, 0) basis is returned for full column rank.
    """
    h = np.asarray(h)
    if h.ndim != 2:
        raise ValueError("expected a 2-D channel matrix")
    _, s, vh = np.linalg.svd(h)
    tol = (s[0] * SV_RTOL) if s.size else 0.0
    rank = int(np.sum(s > tol))
    return vh[rank:, :].conj().T


def generate_an(
    rng: np.random.Generator,
    basis: np.ndarray,
    lambda_u2: float,
    n_subbands: int,
) -> np.ndarray:
    """AN vectors per subband, shape (n_t, n_subbands).

    Each subband gets a fresh draw eps_n = sum_i delta_i v_i u_i with
    equal weights delta_i = 1/sqrt(n_t - r) and u_i ~ CN(0, lambda_u2/N),
    so E[eps_n^H eps_n] = lambda_u2 / N and the AN budget totals
    lambda_u2 across subbands.
    """
    basis = np.asarray(basis)
    n_t, k = basis.shape
    if lambda_u2 < 0:
        raise ValueError("lambda_u2 must be non-negative")
    if lambda_u2 == 0.0 or k == 0:
        if lambda_u2 > 0 and k == 0:
            raise ValueError("AN requested but the nullspace is empty")
        return np.zeros((n_t, n_subbands), dtype=complex)
    u = complex_normal(rng, (k, n_subbands), lambda_u2 / n_subbands)
    return (basis @ u) / math.sqrt(k)


def compose_transmit(
    codeword_tx: np.ndarray, split: PowerSplit, n_subbands: int
) -> np.ndarray:
    """Per-subband information waveform w_n, shape (n_t, n_subbands).

    The codeword is replicated on every subband with amplitude
    sqrt(lambda_s^2 / N), keeping the radiated information power at
    lambda_s^2 in total.
    """
    scale = split.signal_scale(n_subbands)
    return scale * np.repeat(np.asarray(codeword_tx)[:, None], n_subbands, axis=1)


def receive_baseband(
    gains: np.ndarray, w: np.ndarray, eps: np.ndarray, noise: np.ndarray
) -> np.ndarray:
    """Per-subband baseband observation y_n = H_n (w_n + eps_n) + z_n.

    gains has shape (n_rx, n_t, N); w, eps shape (n_t, N); noise shape
    (n_rx, N). Returns (n_rx, N).
    """
    x = w + eps
    y = np.einsum("rtn,tn->rn", gains, x)
    return y + noise


def subband_frequencies(f1_hz: float, delta_f_hz: float, n_subbands: int) -> np.ndarray:
    """Carrier frequencies f_n = f1 + (n - 1) delta_f."""
    return f1_hz + delta_f_hz * np.arange(n_subbands)


def passband_samples_eh(
    gains_eh: np.ndarray,
    w: np.ndarray,
    eps: np.ndarray,
    f1_hz: float,
    delta_f_hz: float,
    sample_rate_hz: float,
    duration_s: float,
) -> np.ndarray:
    """Real passband waveform at the harvester, shape (n_eh, n_samples).

    y_q(t) = Re{ sum_n [G_n w_n] e^(j 2 pi f_n t) + [sum_n G_n eps_n] e^(j 2 pi f1 t) }_q

    The information tones occupy their own subband carriers while the
    whole AN component rides the first carrier. The sampling grid must
    resolve the fourth-order mixing products (rate >= 10 f_max) and span
    an integer number of beat periods (1/delta_f, or carrier periods for
    a single tone) so that time averages of y^2 and y^4 are exact.
    """
    gains_eh = np.asarray(gains_eh)
    n_subbands = gains_eh.shape[2]
    freqs = subband_frequencies(f1_hz, delta_f_hz, n_subbands)
    f_max = float(freqs[-1])
    if sample_rate_hz < 10.0 * f_max:
        raise ValueError("sample_rate must be at least 10x the highest carrier")
    n_samples = int(round(duration_s * sample_rate_hz))
    if n_samples < 1:
        raise ValueError("duration too short for the sample rate")
    cycles = duration_s * (delta_f_hz if n_subbands > 1 else f1_hz)
    if abs(cycles - round(cycles)) > 1e-6 or round(cycles) < 1:
        raise ValueError("duration must span an integer number of beat periods")

    # Complex tone amplitudes per EH antenna: information on f_n, AN on f1.
    amps = np.einsum("qtn,tn->qn", gains_eh, w)
    amps[:, 0] += np.einsum("qtn,tn->q", gains_eh, eps)
    t = np.arange(n_samples) / sample_rate_hz
    carriers = np.exp(2j * np.pi * freqs[:, None] * t[None, :])
    return np.real(amps @ carriers)
