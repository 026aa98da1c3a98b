"""simlab command line interface."""

from __future__ import annotations

import argparse
import sys

from .checks import run_validation
from .config import ExperimentConfig, load_config
from .harness import SweepResult, run_ber_sweep, run_esr_sweep, run_zdc_sweep, write_csv

_SWEEPS = {
    "ber": run_ber_sweep,
    "analysis": run_ber_sweep,
    "zdc": run_zdc_sweep,
    "esr": run_esr_sweep,
}

# `analysis` is the closed-form-vs-simulated error-rate table; it carries the
# comparison columns only, while `ber` keeps the confidence/bookkeeping extras.
_ANALYSIS_COLUMNS = (
    "scheme",
    "snr_db",
    "aber_analytic",
    "aber_simulated",
    "aber_eve_analytic",
    "aber_eve_simulated",
)


def _project(result: SweepResult, names) -> SweepResult:
    idx = [result.header.index(n) for n in names]
    rows = tuple(tuple(row[i] for i in idx) for row in result.rows)
    return SweepResult(result.kind, tuple(names), rows)


def _add_common(sub):
    sub.add_argument("--config", help="flat key = value config file")
    sub.add_argument("--seed", type=int, help="master seed override")
    sub.add_argument("--out", help="output CSV path")
    sub.add_argument("--threads", type=int, default=1, help="worker threads")
    sub.add_argument(
        "--no-plot", action="store_true", help="skip the PNG next to the CSV"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="simlab",
        description="Index-modulated multitone power transfer link simulator",
    )
    subs = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("ber", "simulated and union-bound bit error rates vs P_T/N0"),
        ("analysis", "alias of ber"),
        ("zdc", "harvested z_DC vs power-split rho"),
        ("esr", "ergodic secrecy rate vs P_T/N0"),
    ):
        _add_common(subs.add_parser(name, help=help_text))
    val = subs.add_parser("validate", help="run the invariant checks")
    val.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    if args.command == "validate":
        results = run_validation(args.seed)
        width = max(len(r.name) for r in results)
        failures = 0
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            print(f"{r.name:<{width}}  {status}  {r.detail}")
            failures += 0 if r.passed else 1
        print(f"{len(results) - failures}/{len(results)} checks passed")
        return 1 if failures else 0

    cfg = load_config(args.config) if args.config else ExperimentConfig()
    if args.seed is not None:
        cfg = cfg.with_overrides(seed=args.seed)

    result = _SWEEPS[args.command](cfg, threads=max(1, args.threads))
    if args.command == "analysis":
        result = _project(result, _ANALYSIS_COLUMNS)
    out = args.out or f"simlab_{args.command}.csv"
    write_csv(result, out)
    print(f"wrote {out}")
    if not args.no_plot:
        from .plotting import render

        png = render(result, out)
        print(f"wrote {png}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
