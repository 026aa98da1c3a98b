"""Nonlinear rectenna model and harvested-DC figure of merit.

The harvested current is summarised by the truncated-Taylor figure

    z_DC = k2 R_ant m2 + k4 R_ant^2 m4

where m2 and m4 are time averages of the squared and fourth-powered real
passband input. The rectifier output voltage follows a measured piecewise
characteristic with a turn-on threshold and a saturation clamp; outputs
of multiple rectennas combine in the DC domain.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channel import dbm_to_watts


@dataclass(frozen=True)
class RectennaParams:
    """Rectifier constants and operating thresholds.

    k2/k4 are the second- and fourth-order current coefficients fitted
    for a single-diode rectifier, r_ant the antenna resistance. The
    piecewise output voltage turns on at gamma_in and clamps at the
    input power gamma_sat.
    """

    k2: float = 0.0034
    k4: float = 0.3829
    r_ant: float = 50.0
    r_load: float = 50.0
    beta2: float = 1.0
    beta4: float = 0.1
    gamma_in_dbm: float = -20.0
    gamma_sat_dbm: float = 10.0

    def __post_init__(self):
        if min(self.k2, self.k4) <= 0 or min(self.r_ant, self.r_load) <= 0:
            raise ValueError("rectenna constants must be positive")
        if self.gamma_sat_dbm <= self.gamma_in_dbm:
            raise ValueError("gamma_sat must exceed gamma_in")

    @property
    def gamma_in_w(self) -> float:
        return dbm_to_watts(self.gamma_in_dbm)

    @property
    def gamma_sat_w(self) -> float:
        return dbm_to_watts(self.gamma_sat_dbm)


@dataclass(frozen=True)
class SignalMoments:
    """Time-averaged even moments of a real passband signal."""

    m2: np.ndarray | float
    m4: np.ndarray | float


def signal_moments(samples: np.ndarray) -> SignalMoments:
    """m2 = mean(y^2), m4 = mean(y^4) along the last (time) axis."""
    samples = np.asarray(samples, dtype=float)
    if samples.shape[-1] < 1:
        raise ValueError("empty sample window")
    y2 = samples**2
    m2 = y2.mean(axis=-1)
    m4 = (y2**2).mean(axis=-1)
    if m2.ndim == 0:
        return SignalMoments(float(m2), float(m4))
    return SignalMoments(m2, m4)


def z_dc(moments: SignalMoments, params: RectennaParams) -> np.ndarray | float:
    """Harvested-DC figure of merit per rectenna."""
    return params.k2 * params.r_ant * np.asarray(moments.m2) + params.k4 * (
        params.r_ant**2
    ) * np.asarray(moments.m4)


def v_out(p_in_w: np.ndarray | float, params: RectennaParams) -> np.ndarray | float:
    """Rectifier DC output voltage for an average input power in watts.

    Zero below the turn-on threshold, beta2 p + beta4 p^2 in the active
    region, and clamped at the saturation input power.
    """
    p = np.asarray(p_in_w, dtype=float)
    if np.any(p < 0):
        raise ValueError("input power must be non-negative")
    p_eff = np.minimum(p, params.gamma_sat_w)
    v = params.beta2 * p_eff + params.beta4 * p_eff**2
    v = np.where(p < params.gamma_in_w, 0.0, v)
    return float(v) if v.ndim == 0 else v


def dc_power(v_outs: np.ndarray, params: RectennaParams) -> float:
    """DC-domain combining of rectenna outputs: sum of v^2 / R_load."""
    v = np.asarray(v_outs, dtype=float)
    return float(np.sum(v**2) / params.r_load)
