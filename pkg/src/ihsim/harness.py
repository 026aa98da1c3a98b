"""Monte Carlo experiment harness: seeded sweeps, batching, CSV output.

Reproducibility model: every batch of trials owns an independent RNG
stream keyed by (master seed, experiment id, point index, batch index)
through numpy's SeedSequence, and partial results are reduced in fixed
batch order with a pairwise tree. Results are therefore a pure function
of (config, seed), independent of the worker thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import complex_normal, path_loss_amplitude, reference_noise_variance
from .codebook import build_codebook
from .config import ExperimentConfig
from .detection import ml_detect_batch
from .error_rates import aber_union_bound, nu_bar_pair, nu_bar_pair_eve
from .harvester import RectennaParams, signal_moments, z_dc
from .secrecy import secrecy_rate_draws
from .waveform import PowerSplit, subband_frequencies

# Experiment ids keep RNG streams of different sweeps disjoint.
_EXP_BER = 1
_EXP_ZDC = 2
_EXP_ESR = 3

_BATCH_TRIALS = 4096
_BATCH_REALIZATIONS = 256
_BATCH_ESR = 25


@dataclass(frozen=True)
class SweepResult:
    kind: str
    header: tuple[str, ...]
    rows: tuple[tuple, ...]

    def column(self, name: str) -> list:
        idx = self.header.index(name)
        return [row[idx] for row in self.rows]


def stream_rng(seed: int, *path: int) -> np.random.Generator:
    """Deterministic RNG stream addressed by a key path."""
    return np.random.default_rng(np.random.SeedSequence([seed, *path]))


def tree_sum(values):
    """Pairwise tree reduction; deterministic for a given input order."""
    items = list(values)
    if not items:
        raise ValueError("nothing to reduce")
    while len(items) > 1:
        items = [
            items[i] + items[i + 1] if i + 1 < len(items) else items[i]
            for i in range(0, len(items), 2)
        ]
    return items[0]


def _split_batches(total: int, batch_size: int) -> list[int]:
    sizes = [batch_size] * (total // batch_size)
    if total % batch_size:
        sizes.append(total % batch_size)
    return sizes


def _run_batches(worker, total: int, batch_size: int, threads: int, seed_path):
    """Run worker(rng, count) over batches; results in batch order."""
    sizes = _split_batches(total, batch_size)
    rngs = [stream_rng(*seed_path, b) for b in range(len(sizes))]
    if threads <= 1:
        return [worker(rng, n) for rng, n in zip(rngs, sizes)]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(worker, rng, n) for rng, n in zip(rngs, sizes)]
        return [f.result() for f in futures]


def _popcount_table(eta: int) -> np.ndarray:
    labels = np.arange(2**eta, dtype=np.uint32)
    table = np.zeros(2**eta, dtype=np.int64)
    for bit in range(eta):
        table += (labels >> bit) & 1
    return table


def _batched_nullspace(h: np.ndarray) -> np.ndarray:
    """Nullspace bases for a batch of full-rank flat channels (B, n_rx, n_t)."""
    n_rx, n_t = h.shape[1], h.shape[2]
    _, _, vh = np.linalg.svd(h)
    return vh[:, n_rx:, :].conj().transpose(0, 2, 1)  # (B, n_t, n_t - n_rx)


def _ber_worker(
    rng: np.random.Generator,
    n_trials: int,
    tx: np.ndarray,
    popcounts: np.ndarray,
    cfg: ExperimentConfig,
    split: PowerSplit,
    noise_var: float,
):
    """One batch of joint IR/Eve detection trials. Returns error counts."""
    n_t = tx.shape[0]
    n_words = tx.shape[1]
    n_sub = cfg.n_subbands
    scale = split.signal_scale(n_sub)

    labels = rng.integers(0, n_words, size=n_trials)
    x = tx[:, labels].T  # (B, n_t)
    h_ir = _draw_flat_batch(rng, n_trials, cfg.n_ir, n_t, cfg.d_ir)
    g_eve = _draw_flat_batch(rng, n_trials, cfg.n_eve, n_t, cfg.d_eve)

    if split.lambda_u2 > 0:
        basis = _batched_nullspace(h_ir)  # (B, n_t, k)
        k = basis.shape[2]
        u = complex_normal(rng, (n_trials, k, n_sub), split.lambda_u2 / n_sub)
        eps = (basis @ u) / math.sqrt(k)  # (B, n_t, N)
    else:
        eps = np.zeros((n_trials, n_t, n_sub), dtype=complex)

    signal = scale * x  # (B, n_t), identical on every subband
    y_ir = np.einsum("brt,bt->br", h_ir, signal)[:, :, None] + np.einsum(
        "brt,btn->brn", h_ir, eps
    )
    y_eve = np.einsum("brt,bt->br", g_eve, signal)[:, :, None] + np.einsum(
        "brt,btn->brn", g_eve, eps
    )
    if not cfg.noiseless:
        y_ir = y_ir + complex_normal(rng, y_ir.shape, noise_var)
        y_eve = y_eve + complex_normal(rng, y_eve.shape, noise_var)

    det_ir = ml_detect_batch(tx, h_ir, y_ir, scale)
    if cfg.eve_whiten and split.lambda_u2 > 0:
        w = _batched_whiteners(g_eve, basis, split.lambda_u2, noise_var, n_sub)
        g_w = w @ g_eve
        y_w = np.einsum("bij,bjn->bin", w, y_eve)
        det_eve = ml_detect_batch(tx, g_w, y_w, scale)
    else:
        det_eve = ml_detect_batch(tx, g_eve, y_eve, scale)

    bit_ir = int(popcounts[labels ^ det_ir].sum())
    bit_eve = int(popcounts[labels ^ det_eve].sum())
    return np.array([bit_ir, bit_eve, n_trials], dtype=np.int64)


def _draw_flat_batch(rng, batch, n_rx, n_t, distance):
    amp = path_loss_amplitude(distance)
    return amp * complex_normal(rng, (batch, n_rx, n_t))


def _batched_whiteners(g_eve, basis, lambda_u2, noise_var, n_sub):
    """C^(-1/2) per trial for flat channels (covariance equal across subbands)."""
    gv = g_eve @ basis  # (B, n_eve, k)
    k = basis.shape[2]
    c = (lambda_u2 / (n_sub * k)) * (gv @ gv.conj().transpose(0, 2, 1))
    c += noise_var * np.eye(g_eve.shape[1])[None, :, :]
    evals, evecs = np.linalg.eigh(c)
    floor = 1e-12 * np.real(np.trace(c, axis1=1, axis2=2))[:, None]
    evals = np.maximum(evals, floor)
    return (evecs * (evals**-0.5)[:, None, :]) @ evecs.conj().transpose(0, 2, 1)


def run_ber_sweep(cfg: ExperimentConfig, threads: int = 1) -> SweepResult:
    """Simulated and union-bound ABER at IR and Eve across the SNR grid."""
    codebook = build_codebook(cfg.scheme_spec())
    tx = codebook.tx_matrix()
    popcounts = _popcount_table(codebook.eta)
    split = PowerSplit(cfg.pt_watts, cfg.rho)
    pl_ir = path_loss_amplitude(cfg.d_ir) ** 2
    pl_eve = path_loss_amplitude(cfg.d_eve) ** 2

    rows = []
    for point, snr_db in enumerate(cfg.snr_db_grid):
        sigma2 = reference_noise_variance(cfg.pt_watts, snr_db)
        noise_var = cfg.n_subbands * sigma2

        analytic_ir = aber_union_bound(
            codebook,
            lambda j, k: nu_bar_pair(
                codebook, j, k, split.lambda_s2, sigma2, cfg.n_subbands, pl_ir
            ),
            cfg.n_ir,
        )
        analytic_eve = aber_union_bound(
            codebook,
            lambda j, k: nu_bar_pair_eve(
                codebook,
                j,
                k,
                split.lambda_s2,
                split.lambda_u2,
                sigma2,
                cfg.n_subbands,
                pl_eve,
            ),
            cfg.n_eve,
        )

        def worker(rng, count):
            return _ber_worker(rng, count, tx, popcounts, cfg, split, noise_var)

        parts = _run_batches(
            worker, cfg.n_trials, _BATCH_TRIALS, threads, (cfg.seed, _EXP_BER, point)
        )
        bit_ir, bit_eve, trials = tree_sum(parts)
        n_bits = trials * codebook.eta
        ber_ir = bit_ir / n_bits
        ber_eve = bit_eve / n_bits
        se_ir = math.sqrt(max(ber_ir * (1 - ber_ir), 0.0) / n_bits)
        se_eve = math.sqrt(max(ber_eve * (1 - ber_eve), 0.0) / n_bits)
        rows.append(
            (
                cfg.scheme,
                snr_db,
                analytic_ir,
                ber_ir,
                analytic_eve,
                ber_eve,
                se_ir,
                se_eve,
                int(trials),
            )
        )
    header = (
        "scheme",
        "snr_db",
        "aber_analytic",
        "aber_simulated",
        "aber_eve_analytic",
        "aber_eve_simulated",
        "aber_stderr",
        "aber_eve_stderr",
        "n_trials",
    )
    return SweepResult("ber", header, tuple(rows))


def _zdc_worker(
    rng: np.random.Generator,
    n_real: int,
    tx: np.ndarray,
    cfg: ExperimentConfig,
    split: PowerSplit,
    rect: RectennaParams,
    carriers: np.ndarray,
):
    """Sum and sum-of-squares of per-realization z_DC over one batch."""
    n_t = tx.shape[0]
    n_words = tx.shape[1]
    n_sub = cfg.n_subbands
    scale = split.signal_scale(n_sub)
    amp_eh = path_loss_amplitude(cfg.d_eh)
    total = 0.0
    total_sq = 0.0
    for _ in range(n_real):
        h_ir = complex_normal(rng, (cfg.n_ir, n_t))
        g_eh = amp_eh * complex_normal(rng, (cfg.n_eh, n_t))
        label = int(rng.integers(0, n_words))
        x = tx[:, label]
        if split.lambda_u2 > 0:
            _, _, vh = np.linalg.svd(h_ir)
            basis = vh[cfg.n_ir :, :].conj().T
            u = complex_normal(rng, (basis.shape[1], n_sub), split.lambda_u2 / n_sub)
            eps = (basis @ u) / math.sqrt(basis.shape[1])
        else:
            eps = np.zeros((n_t, n_sub), dtype=complex)
        # Tone amplitudes at the harvester: information on every carrier,
        # AN lumped on the first one.
        amps = np.repeat((scale * (g_eh @ x))[:, None], n_sub, axis=1)
        amps[:, 0] += g_eh @ eps.sum(axis=1)
        y = np.real(amps @ carriers)  # (n_eh, T)
        moments = signal_moments(y)
        z = float(np.sum(z_dc(moments, rect)))
        total += z
        total_sq += z * z
    return np.array([total, total_sq, float(n_real)])


def run_zdc_sweep(cfg: ExperimentConfig, threads: int = 1) -> SweepResult:
    """Average harvested z_DC across the rho grid."""
    codebook = build_codebook(cfg.scheme_spec())
    tx = codebook.tx_matrix()
    rect = cfg.rectenna()
    freqs = subband_frequencies(cfg.f1_hz, cfg.delta_f_hz, cfg.n_subbands)
    sample_rate = 10.0 * float(freqs[-1])
    duration = 1.0 / cfg.delta_f_hz if cfg.n_subbands > 1 else 100.0 / cfg.f1_hz
    n_samples = int(round(duration * sample_rate))
    t = np.arange(n_samples) / sample_rate
    carriers = np.exp(2j * np.pi * freqs[:, None] * t[None, :])

    rows = []
    for point, rho in enumerate(cfg.rho_grid):
        split = PowerSplit(cfg.pt_watts, rho)

        def worker(rng, count):
            return _zdc_worker(rng, count, tx, cfg, split, rect, carriers)

        parts = _run_batches(
            worker,
            cfg.n_realizations,
            _BATCH_REALIZATIONS,
            threads,
            (cfg.seed, _EXP_ZDC, point),
        )
        total, total_sq, count = tree_sum(parts)
        mean = total / count
        var = max(total_sq / count - mean**2, 0.0)
        stderr = math.sqrt(var / count)
        rows.append((cfg.scheme, rho, cfg.n_subbands, mean, stderr, int(count)))
    header = ("scheme", "rho", "n_subbands", "zdc_mean", "zdc_stderr", "n_realizations")
    return SweepResult("zdc", header, tuple(rows))


def run_esr_sweep(cfg: ExperimentConfig, threads: int = 1) -> SweepResult:
    """Ergodic secrecy rate across the SNR grid at the configured rho."""
    codebook = build_codebook(cfg.scheme_spec())
    split = PowerSplit(cfg.pt_watts, cfg.rho)

    rows = []
    for point, snr_db in enumerate(cfg.snr_db_grid):
        sigma2 = reference_noise_variance(cfg.pt_watts, snr_db)

        def worker(rng, count):
            rates, _, _ = secrecy_rate_draws(
                codebook,
                split,
                sigma2,
                cfg.n_subbands,
                cfg.n_ir,
                cfg.n_eve,
                count,
                cfg.n_noise,
                rng,
                cfg.d_ir,
                cfg.d_eve,
                cfg.flat_subbands,
            )
            return np.array([rates.sum(), (rates**2).sum(), float(rates.size)])

        parts = _run_batches(
            worker,
            cfg.n_channels,
            _BATCH_ESR,
            threads,
            (cfg.seed, _EXP_ESR, point),
        )
        total, total_sq, count = tree_sum(parts)
        mean = total / count
        var = max(total_sq / count - mean**2, 0.0)
        stderr = math.sqrt(var / count)
        rows.append((cfg.scheme, cfg.rho, cfg.n_subbands, snr_db, mean, stderr))
    header = ("scheme", "rho", "n_subbands", "snr_db", "esr_bits", "std_err")
    return SweepResult("esr", header, tuple(rows))


_FORMATS = {
    "scheme": str,
    "snr_db": lambda v: format(v, "g"),
    "rho": lambda v: format(v, "g"),
    "n_subbands": str,
    "n_trials": str,
    "n_realizations": str,
}


def format_csv(result: SweepResult) -> str:
    """Render a sweep as CSV: header row, '.' decimals, scientific floats."""
    lines = [",".join(result.header)]
    for row in result.rows:
        cells = []
        for name, value in zip(result.header, row):
            fmt = _FORMATS.get(name)
            cells.append(fmt(value) if fmt else format(value, ".8e"))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def write_csv(result: SweepResult, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_csv(result))
