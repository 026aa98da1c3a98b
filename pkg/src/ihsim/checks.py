"""Self-contained invariant checks behind the validate subcommand.

Each check returns a CheckResult; the runner prints one status line per
check. Several checks accept the function under test as an argument so
that deliberately corrupted implementations can be shown to fail.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channel import complex_normal, draw_channel, path_loss_db
from .codebook import SCHEMES, SchemeSpec, build_codebook
from .detection import ml_detect, ml_detect_batch
from .error_rates import (
    average_pep,
    cpep,
    cpep_eve,
    eve_covariance,
    inv_sqrt_hermitian,
    phi_vector,
    q_function,
)
from .harvester import RectennaParams, signal_moments, z_dc
from .secrecy import effective_channels, mutual_info
from .waveform import (
    PowerSplit,
    compose_transmit,
    generate_an,
    nullspace_basis,
    passband_samples_eh,
)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _small_specs() -> list[SchemeSpec]:
    params = {
        "ssk": dict(n_t=4),
        "gssk": dict(n_t=5, n_a=2),
        "sm": dict(n_t=4, m=4),
        "gsm": dict(n_t=5, n_a=2, m=4),
        "qssk": dict(n_t=4),
        "gqssk": dict(n_t=5, n_a=2),
        "qsm": dict(n_t=4, m=4),
        "gqsm": dict(n_t=5, n_a=2, m=4),
    }
    return [SchemeSpec(kind, **params[kind]) for kind in SCHEMES]


def check_codebook_power(rng=None) -> CheckResult:
    """Codebook-average transmit energy is exactly one for every family."""
    worst = 0.0
    for spec in _small_specs():
        cb = build_codebook(spec)
        mean = float(np.mean(np.sum(np.abs(cb.tx_matrix()) ** 2, axis=0)))
        worst = max(worst, abs(mean - 1.0))
    return CheckResult("codebook_unit_power", worst < 1e-12, f"max |mean-1| = {worst:.2e}")


def check_codebook_distinct(rng=None) -> CheckResult:
    """No two labels share a transmit vector."""
    for spec in _small_specs():
        cb = build_codebook(spec)
        x = cb.tx_matrix()
        gram = x.conj().T @ x
        d2 = np.add.outer(np.diag(gram).real, np.diag(gram).real) - 2 * gram.real
        np.fill_diagonal(d2, np.inf)
        if d2.min() < 1e-12:
            return CheckResult("codebook_distinct", False, f"collision in {spec.kind}")
    return CheckResult("codebook_distinct", True, "all families distinct")


def check_nullspace(rng, n_channels: int = 100, an_generator=generate_an) -> CheckResult:
    """AN is invisible at the legitimate receiver: ||H eps|| ~ 0."""
    worst = 0.0
    power_err = 0.0
    lambda_u2 = 2.0
    n_sub = 3
    draws = 0
    acc = 0.0
    for _ in range(n_channels):
        h = draw_channel(rng, 2, 4, 1)[:, :, 0]
        basis = nullspace_basis(h)
        eps = an_generator(rng, basis, lambda_u2, n_sub)
        worst = max(worst, float(np.max(np.abs(h @ eps))))
        acc += float(np.sum(np.abs(eps) ** 2))
        draws += n_sub
    mean_power = acc / draws
    power_err = abs(mean_power - lambda_u2 / n_sub) / (lambda_u2 / n_sub)
    ok = worst < 1e-10 and power_err < 0.1
    return CheckResult(
        "an_nullspace",
        ok,
        f"max residual {worst:.2e}, per-subband power rel err {power_err:.3f}",
    )


def check_power_conservation(rng) -> CheckResult:
    """Mean radiated power of w + AN equals P_T across the rho range."""
    p_t = 4.0
    cb = build_codebook(SchemeSpec("gssk", 8, 2))
    n_sub = 5
    trials = 40000
    acc = 0.0
    for rho in (0.0, 0.35, 1.0):
        split = PowerSplit(p_t, rho)
        h = draw_channel(rng, 2, 8, 1)[:, :, 0]
        basis = nullspace_basis(h)
        labels = rng.integers(0, len(cb), size=trials)
        x = cb.tx_matrix()[:, labels]
        sig = split.signal_scale(n_sub) ** 2 * np.sum(np.abs(x) ** 2, axis=0) * n_sub
        u = complex_normal(rng, (basis.shape[1], n_sub * trials), split.lambda_u2 / n_sub)
        eps = (basis @ u) / math.sqrt(basis.shape[1])
        total = float(np.mean(sig)) + float(np.sum(np.abs(eps) ** 2) / trials)
        acc = max(acc, abs(total - p_t) / p_t)
    return CheckResult("power_conservation", acc < 1e-2, f"max rel err {acc:.3e}")


def check_path_loss(rng=None) -> CheckResult:
    v = path_loss_db(1.0)
    ok = abs(v - 35.3) < 1e-12
    return CheckResult("path_loss_reference", ok, f"PL(1 m) = {v:.4f} dB")


def check_sinusoid_moments(rng=None) -> CheckResult:
    """Single-tone moments match A^2/2 and 3A^4/8 to near machine precision."""
    a = 1.7
    fs, f = 1e6, 1e5
    t = np.arange(int(fs / f) * 25) / fs
    y = a * np.cos(2 * np.pi * f * t)
    mom = signal_moments(y)
    err = max(abs(mom.m2 - a**2 / 2) / (a**2 / 2), abs(mom.m4 - 3 * a**4 / 8) / (3 * a**4 / 8))
    return CheckResult("sinusoid_moments", err < 1e-6, f"max rel err {err:.2e}")


def check_zdc_arithmetic(rng=None) -> CheckResult:
    params = RectennaParams()
    val = z_dc(signal_moments(np.ones(8)), params)
    expect = 0.0034 * 50.0 + 0.3829 * 2500.0
    ok = abs(val - expect) < 1e-9
    return CheckResult("zdc_arithmetic", ok, f"z_dc(m2=m4=1) = {val:.4f}")


def check_passband_moments(rng) -> CheckResult:
    """Passband composition reproduces closed-form single-tone moments."""
    g = np.ones((1, 1, 1), dtype=complex)
    w = np.array([[2.0 + 0.0j]])
    eps = np.zeros((1, 1), dtype=complex)
    y = passband_samples_eh(g, w, eps, 1e5, 1e3, 1.2e6, 1e-3)
    mom = signal_moments(y[0])
    err = max(abs(mom.m2 - 2.0), abs(mom.m4 - 6.0))
    return CheckResult("passband_moments", err < 1e-9, f"max abs err {err:.2e}")


def check_cpep_oracle(rng, n_draws: int = 200000) -> CheckResult:
    """Q(sqrt(gamma)) matches the empirical pairwise decision error."""
    cb = build_codebook(SchemeSpec("ssk", 4))
    n_sub = 3
    # noise high enough that the pairwise error sits well away from 0,
    # otherwise the empirical/analytic comparison is vacuous
    sigma2 = 0.6
    noise_var = n_sub * sigma2
    scale = math.sqrt(1.0 / n_sub)
    h = draw_channel(rng, 2, 4, n_sub)
    phi = [phi_vector(cb, h, 0, 2, n) for n in range(n_sub)]
    p = cpep(phi, sigma2, n_sub, scale)
    delta = scale * np.stack(phi).reshape(-1)
    z = complex_normal(rng, (n_draws, delta.size), noise_var)
    err = np.mean(2.0 * np.real(z @ delta.conj()) < -np.sum(np.abs(delta) ** 2))
    se = math.sqrt(max(p * (1 - p), 1e-12) / n_draws)
    ok = abs(err - p) < 4 * se + 1e-9
    return CheckResult("cpep_oracle", ok, f"analytic {p:.5f}, empirical {err:.5f}")


def check_cpep_eve_oracle(rng, n_draws: int = 200000) -> CheckResult:
    """Whitened Eve CPEP matches empirical error under AN plus noise."""
    cb = build_codebook(SchemeSpec("ssk", 4))
    n_sub = 1
    sigma2 = 0.05
    lambda_u2 = 1.0
    noise_var = n_sub * sigma2
    scale = 1.0
    h_ir = draw_channel(rng, 2, 4, 1)[:, :, 0]
    basis = nullspace_basis(h_ir)
    g = draw_channel(rng, 2, 4, n_sub)
    c = eve_covariance(g[:, :, 0], basis, lambda_u2, noise_var, n_sub)
    p = cpep_eve(phi_vector(cb, g, 1, 3, 0), c, scale)
    w = inv_sqrt_hermitian(c)
    delta = w @ (scale * phi_vector(cb, g, 1, 3, 0))
    k = basis.shape[1]
    u = complex_normal(rng, (n_draws, k), lambda_u2 / n_sub) / math.sqrt(k)
    v = u @ (g[:, :, 0] @ basis).T + complex_normal(rng, (n_draws, 2), noise_var)
    vw = v @ w.T
    err = np.mean(2.0 * np.real(vw @ delta.conj()) < -np.sum(np.abs(delta) ** 2))
    se = math.sqrt(max(p * (1 - p), 1e-12) / n_draws)
    ok = abs(err - p) < 4 * se + 1e-9
    return CheckResult("cpep_eve_oracle", ok, f"analytic {p:.5f}, empirical {err:.5f}")


def check_pep_limits(rng=None) -> CheckResult:
    ok = (
        abs(average_pep(0.0, 2) - 0.5) < 1e-12
        and average_pep(1e6, 2) < 1e-10
        and abs(float(q_function(0.0)) - 0.5) < 1e-15
    )
    return CheckResult("pep_limits", ok, "PEP(0) = 1/2, PEP(inf) -> 0")


def check_detection_roundtrip(rng) -> CheckResult:
    """Noiseless ML recovers every label for every family."""
    for spec in _small_specs():
        cb = build_codebook(spec)
        tx = cb.tx_matrix()
        h = draw_channel(rng, 2, spec.n_t, 1)
        for label in range(len(cb)):
            y = 0.7 * h[:, :, 0] @ tx[:, label]
            det = ml_detect(cb, h, y[:, None], 0.7)
            if det.label_hat != label:
                return CheckResult(
                    "noiseless_roundtrip", False, f"{spec.kind}: {label} -> {det.label_hat}"
                )
    return CheckResult("noiseless_roundtrip", True, "all labels recovered")


def check_detection_batch_agrees(rng) -> CheckResult:
    """Batched detector agrees with the reference single-shot detector."""
    cb = build_codebook(SchemeSpec("gsm", 5, 2, 4))
    tx = cb.tx_matrix()
    n_sub = 3
    b = 64
    h = complex_normal(rng, (b, 2, 5))
    y = complex_normal(rng, (b, 2, n_sub))
    got = ml_detect_batch(tx, h, y, 0.9)
    for i in range(b):
        gains = np.repeat(h[i][:, :, None], n_sub, axis=2)
        ref = ml_detect(cb, gains, y[i], 0.9)
        if ref.label_hat != got[i]:
            return CheckResult("batch_detector", False, f"trial {i} disagrees")
    return CheckResult("batch_detector", True, "64 random trials agree")


def check_mi_limits(rng) -> CheckResult:
    """MI approaches log2 L at high SNR and 0 at low SNR."""
    cb = build_codebook(SchemeSpec("ssk", 4))
    h = draw_channel(rng, 2, 4, 1)
    eff = effective_channels(cb, h, 1.0)
    hi = mutual_info(eff, 1e-6, 400, rng)
    lo = mutual_info(eff, 1e6, 400, rng)
    ok = hi.value > 1.99 and lo.value < 0.05
    return CheckResult("mi_limits", ok, f"hi {hi.value:.3f}, lo {lo.value:.4f}")


def check_transmit_shapes(rng) -> CheckResult:
    cb = build_codebook(SchemeSpec("ssk", 4))
    split = PowerSplit(2.0, 0.5)
    w = compose_transmit(cb.words[1].tx_vector, split, 5)
    ok = w.shape == (4, 5) and abs(np.sum(np.abs(w) ** 2) - split.lambda_s2) < 1e-12
    return CheckResult("transmit_compose", ok, f"shape {w.shape}")


ALL_CHECKS = [
    check_codebook_power,
    check_codebook_distinct,
    check_nullspace,
    check_power_conservation,
    check_path_loss,
    check_sinusoid_moments,
    check_zdc_arithmetic,
    check_passband_moments,
    check_cpep_oracle,
    check_cpep_eve_oracle,
    check_pep_limits,
    check_detection_roundtrip,
    check_detection_batch_agrees,
    check_mi_limits,
    check_transmit_shapes,
]


def run_validation(seed: int = 0) -> list[CheckResult]:
    results = []
    for i, fn in enumerate(ALL_CHECKS):
        rng = np.random.default_rng(np.random.SeedSequence([seed, 999, i]))
        results.append(fn(rng))
    return results
