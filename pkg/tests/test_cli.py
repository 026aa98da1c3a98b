"""simlab command line behaviour."""

import pytest

from ihsim.cli import main

TINY = """
scheme = ssk
nt = 4
n_subbands = 3
rho = 0.2
snr_db_grid = 4, 20
rho_grid = 0, 1
n_trials = 1500
n_realizations = 30
n_channels = 8
n_noise = 80
"""


@pytest.fixture()
def tiny_cfg(tmp_path):
    path = tmp_path / "tiny.cfg"
    path.write_text(TINY, encoding="utf-8")
    return path


def test_validate_exit_code_and_report(capsys):
    assert main(["validate", "--seed", "0"]) == 0
    out = capsys.readouterr().out
    assert "checks passed" in out
    assert "FAIL" not in out


def test_ber_writes_csv_and_png(tiny_cfg, tmp_path):
    out = tmp_path / "run.csv"
    rc = main([
        "ber", "--config", str(tiny_cfg), "--seed", "3",
        "--out", str(out), "--threads", "2",
    ])
    assert rc == 0
    assert out.exists()
    assert out.with_suffix(".png").exists()
    header = out.read_text().splitlines()[0]
    assert header.startswith("scheme,snr_db,aber_analytic,aber_simulated")


def test_no_plot_flag(tiny_cfg, tmp_path):
    out = tmp_path / "quiet.csv"
    main(["zdc", "--config", str(tiny_cfg), "--out", str(out), "--no-plot"])
    assert out.exists()
    assert not out.with_suffix(".png").exists()


def test_analysis_projects_comparison_columns(tiny_cfg, tmp_path):
    out = tmp_path / "table.csv"
    main(["analysis", "--config", str(tiny_cfg), "--out", str(out), "--no-plot"])
    header = out.read_text().splitlines()[0]
    assert header == (
        "scheme,snr_db,aber_analytic,aber_simulated,"
        "aber_eve_analytic,aber_eve_simulated"
    )


def test_esr_subcommand(tiny_cfg, tmp_path):
    out = tmp_path / "esr.csv"
    rc = main(["esr", "--config", str(tiny_cfg), "--out", str(out), "--no-plot"])
    assert rc == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "scheme,rho,n_subbands,snr_db,esr_bits,std_err"
    assert len(lines) == 3  # header + one row per snr point


def test_seed_flag_changes_output(tiny_cfg, tmp_path):
    a, b, c = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
    main(["ber", "--config", str(tiny_cfg), "--seed", "1", "--out", str(a), "--no-plot"])
    main(["ber", "--config", str(tiny_cfg), "--seed", "1", "--out", str(b), "--no-plot"])
    main(["ber", "--config", str(tiny_cfg), "--seed", "2", "--out", str(c), "--no-plot"])
    assert a.read_bytes() == b.read_bytes()
    assert a.read_bytes() != c.read_bytes()


def test_threads_do_not_change_bytes(tiny_cfg, tmp_path):
    a = tmp_path / "t1.csv"
    b = tmp_path / "t8.csv"
    main(["ber", "--config", str(tiny_cfg), "--seed", "7", "--out", str(a),
          "--threads", "1", "--no-plot"])
    main(["ber", "--config", str(tiny_cfg), "--seed", "7", "--out", str(b),
          "--threads", "8", "--no-plot"])
    assert a.read_bytes() == b.read_bytes()


def test_unknown_subcommand_rejected():
    with pytest.raises(SystemExit):
        main(["frobnicate"])


def test_bad_config_surfaces_error(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nope = 1\n", encoding="utf-8")
    with pytest.raises(ValueError):
        main(["ber", "--config", str(bad), "--no-plot"])
