"""Link-level simulation of index-modulated multitone power transfer.

The package models a transmitter that splits its budget between an
index-modulated information waveform and artificial noise confined to
the legitimate receiver's nullspace, and evaluates bit error rates,
harvested DC power and ergodic secrecy rates at the three receivers
involved (information receiver, energy harvester, eavesdropper).
"""

from .channel import (
    dbm_to_watts,
    draw_channel,
    draw_noise,
    path_loss_amplitude,
    path_loss_db,
    reference_noise_variance,
    subband_noise_variance,
    watts_to_dbm,
)
from .checks import CheckResult, run_validation
from .codebook import (
    QSSK_SYMBOL,
    Codebook,
    Codeword,
    SchemeSpec,
    bit_errors,
    build_codebook,
    enumerate_legal_activations,
    qam_constellation,
    spectral_efficiency,
)
from .config import ExperimentConfig, load_config, parse_config
from .detection import (
    DetectionResult,
    detection_metrics,
    ml_detect,
    ml_detect_batch,
    ml_detect_eve,
)
from .error_rates import (
    aber_union_bound,
    average_pep,
    cpep,
    cpep_eve,
    eve_covariance,
    inv_sqrt_hermitian,
    nu_bar_pair,
    nu_bar_pair_eve,
    phi_vector,
    q_function,
)
from .harness import (
    SweepResult,
    format_csv,
    run_ber_sweep,
    run_esr_sweep,
    run_zdc_sweep,
    stream_rng,
    tree_sum,
    write_csv,
)
from .harvester import (
    RectennaParams,
    SignalMoments,
    dc_power,
    signal_moments,
    v_out,
    z_dc,
)
from .secrecy import (
    EsrEstimate,
    MiEstimate,
    effective_channels,
    ergodic_secrecy_rate,
    mutual_info,
    secrecy_rate,
    secrecy_rate_draws,
)
from .waveform import (
    PowerSplit,
    compose_transmit,
    generate_an,
    nullspace_basis,
    passband_samples_eh,
    receive_baseband,
    subband_frequencies,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
