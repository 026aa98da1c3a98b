"""Figure rendering for sweep results.

Every report subcommand writes a PNG next to its CSV. Uses the Agg
backend so rendering works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_STYLE = {
    "figure.figsize": (6.0, 4.2),
    "axes.grid": True,
    "grid.alpha": 0.4,
    "lines.markersize": 5,
    "font.size": 10,
}


def _grouped(result, key):
    groups = {}
    for row in result.rows:
        groups.setdefault(row[result.header.index(key)], []).append(row)
    return groups


def plot_ber(result, path) -> None:
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        snr = result.column("snr_db")
        series = [
            ("aber_analytic", "IR union bound", "-", "C0"),
            ("aber_simulated", "IR simulated", "o", "C0"),
            ("aber_eve_analytic", "Eve union bound", "-", "C3"),
            ("aber_eve_simulated", "Eve simulated", "s", "C3"),
        ]
        for col, label, style, color in series:
            vals = result.column(col)
            if style == "-":
                ax.semilogy(snr, vals, style, color=color, label=label)
            else:
                ax.semilogy(snr, vals, style, color=color, mfc="none", label=label)
        ax.set_xlabel(r"$P_T/N_0$ (dB)")
        ax.set_ylabel("average BER")
        ax.set_title(f"{result.rows[0][0]} bit error rate")
        ax.legend()
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)


def plot_zdc(result, path) -> None:
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        rho = result.column("rho")
        mean = result.column("zdc_mean")
        err = [3 * s for s in result.column("zdc_stderr")]
        ax.errorbar(rho, mean, yerr=err, fmt="o-", capsize=3)
        ax.set_xlabel(r"$\rho$")
        ax.set_ylabel(r"$z_{DC}$")
        row = result.rows[0]
        ax.set_title(f"{row[0]} harvested DC, N = {row[2]}")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)


def plot_esr(result, path) -> None:
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots()
        snr = result.column("snr_db")
        esr = result.column("esr_bits")
        err = [3 * s for s in result.column("std_err")]
        ax.errorbar(snr, esr, yerr=err, fmt="o-", capsize=3)
        ax.set_xlabel(r"$P_T/N_0$ (dB)")
        ax.set_ylabel("ergodic secrecy rate (bits)")
        row = result.rows[0]
        ax.set_title(f"{row[0]} secrecy rate, rho = {row[1]:g}, N = {row[2]}")
        fig.tight_layout()
        fig.savefig(path, dpi=150)
        plt.close(fig)


PLOTTERS = {"ber": plot_ber, "zdc": plot_zdc, "esr": plot_esr}


def render(result, csv_path) -> str:
    """Render the figure matching a sweep next to its CSV; returns the path."""
    from pathlib import Path

    png = str(Path(csv_path).with_suffix(".png"))
    PLOTTERS[result.kind](result, png)
    return png
