"""Codebook construction, labeling, and spectral efficiency."""

import math

import numpy as np
import pytest

from ihsim import (
    QSSK_SYMBOL,
    SchemeSpec,
    bit_errors,
    build_codebook,
    enumerate_legal_activations,
    qam_constellation,
    spectral_efficiency,
)


@pytest.mark.parametrize(
    "kind,kwargs,eta",
    [
        ("ssk", dict(n_t=2), 1),
        ("ssk", dict(n_t=4), 2),
        ("ssk", dict(n_t=8), 3),
        ("gssk", dict(n_t=4, n_a=2), 2),
        ("gssk", dict(n_t=24, n_a=2), 8),
        ("sm", dict(n_t=4, m=4), 4),
        ("gsm", dict(n_t=5, n_a=2, m=4), 5),
        ("qssk", dict(n_t=4), 4),
        ("qssk", dict(n_t=16), 8),
        ("gqssk", dict(n_t=5, n_a=2), 6),
        ("qsm", dict(n_t=4, m=4), 6),
        ("gqsm", dict(n_t=5, n_a=2, m=4), 8),
    ],
)
def test_spectral_efficiency(kind, kwargs, eta):
    assert spectral_efficiency(SchemeSpec(kind, **kwargs)) == eta


def test_activation_enumeration_order():
    # lexicographic-first, truncated to a power of two
    acts = enumerate_legal_activations(4, 2)
    assert acts == [(0, 1), (0, 2), (0, 3), (1, 2)]
    assert enumerate_legal_activations(3, 1) == [(0,), (1,)]


def test_activation_count_is_power_of_two():
    for n_t, n_a in [(5, 2), (24, 2), (7, 3)]:
        acts = enumerate_legal_activations(n_t, n_a)
        assert len(acts) == 2 ** int(math.log2(len(acts)))
        assert len(acts) <= math.comb(n_t, n_a)


@pytest.mark.parametrize(
    "kind,kwargs",
    [
        ("ssk", dict(n_t=4, n_a=2)),    # single-active family
        ("sm", dict(n_t=4, n_a=2, m=4)),
        ("qsm", dict(n_t=4, m=2)),      # m=2 collapses the Im branch
        ("gqsm", dict(n_t=5, n_a=2, m=2)),
        ("sm", dict(n_t=4, m=3)),       # not a power of two
        ("gssk", dict(n_t=2, n_a=2)),   # one legal activation, zero bits
        ("ssk", dict(n_t=1)),
    ],
)
def test_spec_validation_rejects(kind, kwargs):
    with pytest.raises(ValueError):
        SchemeSpec(kind, **kwargs)


def test_qam_unit_energy():
    for m in (2, 4, 16, 64):
        pts = qam_constellation(m)
        assert len(pts) == m
        assert np.mean(np.abs(pts) ** 2) == pytest.approx(1.0, abs=1e-12)


def test_qam_fourth_moment_16():
    # unit-energy 16-QAM: E|w|^4 = 1.32 exactly
    pts = qam_constellation(16)
    assert np.mean(np.abs(pts) ** 4) == pytest.approx(1.32, abs=1e-12)


def test_qam_gray_adjacency():
    # sweeping one axis in amplitude order flips exactly one label bit
    pts = qam_constellation(16)
    re_axis = {}
    for label, p in enumerate(pts):
        if abs(p.imag - pts[0].imag) < 1e-12:
            re_axis[p.real] = label
    labels = [re_axis[a] for a in sorted(re_axis)]
    assert len(labels) == 4
    for a, b in zip(labels, labels[1:]):
        assert bin(a ^ b).count("1") == 1


def test_bpsk_is_real_pair():
    pts = qam_constellation(2)
    assert sorted(np.real(pts)) == pytest.approx([-1.0, 1.0])
    assert np.max(np.abs(np.imag(pts))) == 0.0


def test_codeword_power_ssk_family():
    for spec in (SchemeSpec("ssk", 4), SchemeSpec("gssk", 5, 2), SchemeSpec("qssk", 4)):
        cb = build_codebook(spec)
        powers = np.sum(np.abs(cb.tx_matrix()) ** 2, axis=0)
        assert np.allclose(powers, 1.0, atol=1e-12)


def test_codebook_mean_power_modulated():
    for spec in (SchemeSpec("sm", 4, m=16), SchemeSpec("gqsm", 5, 2, m=4)):
        cb = build_codebook(spec)
        powers = np.sum(np.abs(cb.tx_matrix()) ** 2, axis=0)
        assert np.mean(powers) == pytest.approx(1.0, abs=1e-12)


def test_qssk_symbol_split():
    assert QSSK_SYMBOL == pytest.approx((1 + 1j) / math.sqrt(2))
    cb = build_codebook(SchemeSpec("qssk", 2))
    w = cb.words[1]  # Re on antenna 0, Im on antenna 1
    assert w.active_re == (0,) and w.active_im == (1,)
    assert w.tx_vector[0] == pytest.approx(QSSK_SYMBOL.real)
    assert w.tx_vector[1] == pytest.approx(1j * QSSK_SYMBOL.imag)


def test_labels_are_dense_and_words_distinct():
    cb = build_codebook(SchemeSpec("gqsm", 5, 2, 4))
    assert [w.label for w in cb.words] == list(range(256))
    tx = cb.tx_matrix()
    assert tx.shape == (5, 256)
    gram = np.abs(tx.conj().T @ tx)
    norms = np.sum(np.abs(tx) ** 2, axis=0)
    d2 = norms[:, None] + norms[None, :] - 2 * np.real(tx.conj().T @ tx)
    np.fill_diagonal(d2, np.inf)
    assert d2.min() > 1e-12
    assert gram.shape == (256, 256)


def test_tx_matrix_matches_words():
    cb = build_codebook(SchemeSpec("sm", 4, m=4))
    tx = cb.tx_matrix()
    for w in cb.words:
        assert np.array_equal(tx[:, w.label], w.tx_vector)


def test_bit_errors():
    assert bit_errors(0, 0, 4) == 0
    assert bit_errors(3, 5, 3) == 2
    assert bit_errors(0, 255, 8) == 8
    assert bit_errors(5, 3, 3) == bit_errors(3, 5, 3)
