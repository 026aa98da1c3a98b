"""Closed-form pairwise error probabilities and the union bound.

Conventions. sigma2 always denotes the single-subband reference noise
variance set by the transmit SNR; the simulated receiver sees N * sigma2
per subband branch (see channel.subband_noise_variance), which is exactly
what the 1/(2 N sigma2) aggregation below assumes. Difference vectors
Phi carry the raw channel response; the per-subband transmit amplitude
enters through the explicit scale argument.
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import erfc

from .codebook import Codebook, bit_errors


def q_function(x: np.ndarray | float) -> np.ndarray | float:
    """Gaussian tail probability Q(x) = 0.5 erfc(x / sqrt(2))."""
    return 0.5 * erfc(np.asarray(x) / math.sqrt(2.0))


def phi_vector(
    codebook: Codebook, gains: np.ndarray, j: int, k: int, subband: int
) -> np.ndarray:
    """Received difference vector H_n (x_j - x_k) on one subband."""
    gains = np.asarray(gains)
    dx = codebook.words[j].tx_vector - codebook.words[k].tx_vector
    return gains[:, :, subband] @ dx


def _stack_subbands(phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    if phi.ndim == 1:
        phi = phi[None, :]
    return phi  # (N, n_rx)


def cpep(phi, sigma2: float, n_subbands: int, scale: float = 1.0) -> float:
    """Conditional pairwise error probability Q(sqrt(gamma)).

    gamma = scale^2 sum_n ||Phi_n||^2 / (2 N sigma2) with sigma2 the
    single-subband reference variance. phi is a sequence of per-subband
    difference vectors (or a single vector for N = 1).
    """
    if sigma2 <= 0:
        raise ValueError("sigma2 must be positive")
    phi = _stack_subbands(phi)
    if phi.shape[0] != n_subbands:
        raise ValueError("phi must provide one difference vector per subband")
    gamma = (scale**2) * np.sum(np.abs(phi) ** 2) / (2.0 * n_subbands * sigma2)
    return float(q_function(math.sqrt(gamma)))


def inv_sqrt_hermitian(c: np.ndarray, floor_rtol: float = 1e-12) -> np.ndarray:
    """C^(-1/2) of a Hermitian PSD matrix via eigendecomposition.

    Eigenvalues are floored at floor_rtol * trace(C) to keep nearly
    singular covariances invertible.
    """
    c = np.asarray(c)
    evals, evecs = np.linalg.eigh(c)
    floor = floor_rtol * float(np.real(np.trace(c)))
    if floor <= 0:
        raise ValueError("covariance must have positive trace")
    evals = np.maximum(np.real(evals), floor)
    return (evecs * (evals**-0.5)) @ evecs.conj().T


def eve_covariance(
    gains_n: np.ndarray,
    basis: np.ndarray,
    lambda_u2: float,
    noise_var: float,
    n_subbands: int,
) -> np.ndarray:
    """Interference-plus-noise covariance seen by the eavesdropper.

    C = lambda_u2 / (N (n_t - r)) * G V V^H G^H + noise_var I, where V is
    the AN nullspace basis and noise_var the actual per-subband noise
    variance.
    """
    gains_n = np.asarray(gains_n)
    basis = np.asarray(basis)
    n_rx = gains_n.shape[0]
    k = basis.shape[1]
    c = noise_var * np.eye(n_rx, dtype=complex)
    if lambda_u2 > 0 and k > 0:
        gv = gains_n @ basis
        c = c + (lambda_u2 / (n_subbands * k)) * (gv @ gv.conj().T)
    return c


def cpep_eve(phi, covs, scale: float = 1.0) -> float:
    """Whitened pairwise error probability at the eavesdropper.

    Each subband difference vector is whitened by C_n^(-1/2); the
    resulting unit-variance aggregation gives
    gamma = scale^2 sum_n ||C_n^(-1/2) Phi_n||^2 / 2.
    """
    phi = _stack_subbands(phi)
    covs = np.asarray(covs, dtype=complex)
    if covs.ndim == 2:
        covs = covs[None, :, :]
    if covs.shape[0] != phi.shape[0]:
        raise ValueError("need one covariance per subband")
    gamma = 0.0
    for n in range(phi.shape[0]):
        w = inv_sqrt_hermitian(covs[n])
        gamma += float(np.sum(np.abs(w @ phi[n]) ** 2))
    gamma *= 0.5 * scale**2
    return float(q_function(math.sqrt(gamma)))


def average_pep(nu_bar: np.ndarray | float, n_rx: int) -> np.ndarray | float:
    """Rayleigh-averaged pairwise error probability.

    For gamma a sum of n_rx i.i.d. exponential branch terms with mean
    nu_bar, E[Q(sqrt(gamma))] has the standard diversity closed form
    with xi = (1 - sqrt((nu/2) / (1 + nu/2))) / 2.
    """
    if n_rx < 1:
        raise ValueError("n_rx must be positive")
    nu = np.asarray(nu_bar, dtype=float)
    if np.any(nu < 0):
        raise ValueError("nu_bar must be non-negative")
    half = nu / 2.0
    xi = 0.5 * (1.0 - np.sqrt(half / (1.0 + half)))
    acc = np.zeros_like(xi)
    for i in range(n_rx):
        acc = acc + math.comb(n_rx - 1 + i, i) * (1.0 - xi) ** i
    out = (xi**n_rx) * acc
    return float(out) if out.ndim == 0 else out


def nu_bar_pair(
    codebook: Codebook,
    j: int,
    k: int,
    lambda_s2: float,
    sigma2: float,
    n_subbands: int,
    pl_lin: float = 1.0,
) -> float:
    """Mean per-branch SNR for a codeword pair under i.i.d. Rayleigh rows.

    nu_bar = lambda_s2 * PL * ||x_j - x_k||^2 / (2 N sigma2): the mean of
    the per-receive-antenna chi-square component of gamma with flat
    subbands.
    """
    dx = codebook.words[j].tx_vector - codebook.words[k].tx_vector
    d2 = float(np.sum(np.abs(dx) ** 2))
    return lambda_s2 * pl_lin * d2 / (2.0 * n_subbands * sigma2)


def nu_bar_pair_eve(
    codebook: Codebook,
    j: int,
    k: int,
    lambda_s2: float,
    lambda_u2: float,
    sigma2: float,
    n_subbands: int,
    pl_lin: float = 1.0,
) -> float:
    """Eavesdropper analogue of nu_bar_pair.

    The whitened branch SNR replaces the noise floor with the per-entry
    interference-plus-noise power N sigma2 + lambda_u2 / N, treating the
    AN covariance as white.
    """
    dx = codebook.words[j].tx_vector - codebook.words[k].tx_vector
    d2 = float(np.sum(np.abs(dx) ** 2))
    denom = 2.0 * (n_subbands * sigma2 + lambda_u2 / n_subbands)
    return lambda_s2 * pl_lin * d2 / denom


def aber_union_bound(codebook: Codebook, nu_bar_fn, n_rx: int) -> float:
    """Union-bound average bit error rate.

    ABER <= (1 / eta) (1 / 2^eta) sum_j sum_{k != j} eps(j, k) PEP(j, k)
    with eps the Hamming distance between labels and PEP the Rayleigh
    average for nu_bar_fn(j, k).
    """
    n_words = len(codebook)
    eta = codebook.eta
    pairs = [(j, k) for j in range(n_words) for k in range(n_words) if k != j]
    nu = np.array([nu_bar_fn(j, k) for j, k in pairs])
    pep = average_pep(nu, n_rx)
    weights = np.array([bit_errors(j, k, eta) for j, k in pairs], dtype=float)
    return float(np.sum(weights * pep) / (eta * n_words))
