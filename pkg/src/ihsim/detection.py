"""Maximum-likelihood codeword detection.

One joint search covers every scheme family: the codebook's transmit
vectors already embed activation patterns and symbol values, so the ML
rule is a single argmin over all 2^eta candidates of the Euclidean
metric accumulated across subbands.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DetectionResult:
    label_hat: int
    metric: float
    n_evaluated: int


def detection_metrics(
    tx_matrix: np.ndarray, gains: np.ndarray, y: np.ndarray, scale: float
) -> np.ndarray:
    """ML metrics sum_n ||y_n - scale * H_n x_l||^2 for every candidate l."""
    gains = np.asarray(gains)
    y = np.asarray(y)
    if gains.ndim != 3 or y.ndim != 2:
        raise ValueError("gains must be (n_rx, n_t, N) and y (n_rx, N)")
    if gains.shape[2] != y.shape[1] or gains.shape[0] != y.shape[0]:
        raise ValueError("gains and y disagree on dimensions")
    hx = np.einsum("rtn,tl->rln", gains, tx_matrix)
    diff = y[:, None, :] - scale * hx
    return np.sum(np.abs(diff) ** 2, axis=(0, 2))


def ml_detect(
    codebook, gains: np.ndarray, y: np.ndarray, scale: float
) -> DetectionResult:
    """Joint ML detection; ties resolve to the smallest label."""
    metrics = detection_metrics(codebook.tx_matrix(), gains, y, scale)
    label = int(np.argmin(metrics))
    return DetectionResult(label, float(metrics[label]), metrics.size)


def ml_detect_eve(
    codebook,
    gains: np.ndarray,
    y: np.ndarray,
    scale: float,
    whiten: np.ndarray | None = None,
) -> DetectionResult:
    """Eavesdropper ML detection, optionally after interference whitening.

    whiten, when given, is a per-subband stack (n_rx, n_rx, N) applied to
    both the observation and the candidate templates. Without it the AN
    is treated as ordinary noise.
    """
    if whiten is None:
        return ml_detect(codebook, gains, y, scale)
    whiten = np.asarray(whiten)
    gains_w = np.einsum("abn,btn->atn", whiten, gains)
    y_w = np.einsum("abn,bn->an", whiten, y)
    return ml_detect(codebook, gains_w, y_w, scale)


def ml_detect_batch(
    tx_matrix: np.ndarray, gains: np.ndarray, y: np.ndarray, scale: float
) -> np.ndarray:
    """Vectorised detection over a batch of flat-fading trials.

    gains has shape (B, n_rx, n_t) (one draw per trial, shared by all
    subbands) and y shape (B, n_rx, N). Constant-in-l terms are dropped
    from the metric before the argmin. Returns the detected labels (B,).
    """
    gains = np.asarray(gains)
    y = np.asarray(y)
    hx = gains @ tx_matrix  # (B, n_rx, L)
    n_subbands = y.shape[2]
    energy = n_subbands * (scale**2) * np.sum(np.abs(hx) ** 2, axis=1)
    cross = np.einsum("brl,brn->bl", hx.conj(), y)
    metrics = energy - 2.0 * scale * np.real(cross)
    return np.argmin(metrics, axis=1)
