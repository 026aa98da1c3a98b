"""Index-modulation codebooks over antenna activation patterns.

Eight scheme families are supported. The non-quadrature families place a
single complex symbol on a set of active antennas; the quadrature families
route the real and imaginary parts of the symbol through independently
selected activation sets:

    ssk / gssk    antenna-subset keying, no modulated symbol
    sm / gsm      antenna subset plus an M-QAM symbol
    qssk / gqssk  separate subsets for the I and Q rails, fixed symbol
    qsm / gqsm    separate subsets for the I and Q rails plus M-QAM

Every codeword is normalised so the codebook-average transmit energy is
exactly one; waveform power is applied later as an explicit scale factor.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

NON_QUADRATURE = ("ssk", "gssk", "sm", "gsm")
QUADRATURE = ("qssk", "gqssk", "qsm", "gqsm")
MODULATED = ("sm", "gsm", "qsm", "gqsm")
SCHEMES = NON_QUADRATURE + QUADRATURE

# Fixed symbol carried by qssk/gqssk codewords: unit energy with equal
# I/Q split, so both rails are exercised.
QSSK_SYMBOL = (1.0 + 1.0j) / math.sqrt(2.0)


def _is_pow2(n: int) -> bool:
    return n >= 1 and (n & (n - 1)) == 0


@dataclass(frozen=True)
class SchemeSpec:
    """Static description of a scheme instance.

    Parameters
    ----------
    kind : str
        One of ``SCHEMES``.
    n_t : int
        Number of transmit antennas.
    n_a : int
        Active antennas per index group. Must be 1 for the non-grouped
        families (ssk/sm/qssk/qsm).
    m : int
        QAM order for the modulated families, 1 otherwise.
    """

    kind: str
    n_t: int
    n_a: int = 1
    m: int = 1

    def __post_init__(self):
        if self.kind not in SCHEMES:
            raise ValueError(f"unknown scheme kind {self.kind!r}")
        if self.n_t < 1:
            raise ValueError("n_t must be positive")
        if not 1 <= self.n_a <= self.n_t:
            raise ValueError("n_a must satisfy 1 <= n_a <= n_t")
        if self.kind in ("ssk", "sm", "qssk", "qsm") and self.n_a != 1:
            raise ValueError(f"{self.kind} uses exactly one active antenna per group")
        if self.kind in MODULATED:
            if self.m < 2 or not _is_pow2(self.m):
                raise ValueError("modulated schemes need m a power of two, m >= 2")
            if self.kind in ("qsm", "gqsm") and self.m < 4:
                # With m = 2 the symbol has no imaginary part, so the
                # Q-rail activation set would be unobservable and
                # codewords would collide.
                raise ValueError("quadrature modulated schemes need m >= 4")
        elif self.m != 1:
            raise ValueError(f"{self.kind} carries no modulated symbol; set m = 1")
        if self.index_bits < 1:
            raise ValueError("scheme carries no index bits; increase n_t")

    @property
    def index_bits(self) -> int:
        """Bits per activation-set selection, floor(log2 C(n_t, n_a))."""
        return int(math.floor(math.log2(math.comb(self.n_t, self.n_a))))

    @property
    def symbol_bits(self) -> int:
        return int(round(math.log2(self.m))) if self.kind in MODULATED else 0

    @property
    def quadrature(self) -> bool:
        return self.kind in QUADRATURE


def spectral_efficiency(spec: SchemeSpec) -> int:
    """Bits conveyed per channel use.

    The quadrature families spend the index bits twice (once per rail);
    the modulated families add log2(m) symbol bits.
    """
    groups = 2 if spec.quadrature else 1
    return groups * spec.index_bits + spec.symbol_bits


def enumerate_legal_activations(n_t: int, n_a: int) -> list[tuple[int, ...]]:
    """First 2^floor(log2 C(n_t, n_a)) antenna subsets in lexicographic order.

    Subsets are 0-based sorted tuples. Truncating the lexicographic
    enumeration to a power of two makes the activation index a plain
    binary field of the label.
    """
    if not 1 <= n_a <= n_t:
        raise ValueError("need 1 <= n_a <= n_t")
    n_keep = 2 ** int(math.floor(math.log2(math.comb(n_t, n_a))))
    return [c for c in itertools.islice(itertools.combinations(range(n_t), n_a), n_keep)]


def qam_constellation(m: int) -> np.ndarray:
    """Gray-coded square/rectangular M-QAM with unit average energy.

    Bits split into ceil(k/2) in-phase and floor(k/2) quadrature bits;
    each axis maps its bit group through a Gray code onto equally spaced
    amplitude levels. Returns the complex points indexed by the m-ary
    symbol value.
    """
    if not _is_pow2(m) or m < 2:
        raise ValueError("m must be a power of two, m >= 2")
    k = int(round(math.log2(m)))
    n_i = (k + 1) // 2
    n_q = k - n_i
    l_i, l_q = 2**n_i, 2**n_q

    def pam_levels(n_levels: int) -> np.ndarray:
        amps = np.zeros(n_levels)
        for i in range(n_levels):
            amps[i ^ (i >> 1)] = 2 * i - (n_levels - 1)
        return amps

    pam_i = pam_levels(l_i)
    pam_q = pam_levels(l_q) if n_q else np.array([0.0])
    sym = np.arange(m)
    points = pam_i[sym >> n_q] + 1j * pam_q[sym & (l_q - 1)]
    return points / np.sqrt(np.mean(np.abs(points) ** 2))


@dataclass(frozen=True)
class Codeword:
    label: int
    active_re: tuple[int, ...]
    active_im: tuple[int, ...]
    symbol: complex
    tx_vector: np.ndarray


@dataclass
class Codebook:
    """Ordered list of the 2^eta codewords of a scheme instance.

    Labels are the natural binary encodings of the bit blocks, most
    significant first: [activation | symbol] for the non-quadrature
    families and [activation_re | activation_im | symbol] for the
    quadrature ones. Symbol bits address a Gray-coded constellation.
    """

    spec: SchemeSpec
    eta: int = field(init=False)
    words: list[Codeword] = field(init=False)
    activations: list[tuple[int, ...]] = field(init=False)

    def __post_init__(self):
        spec = self.spec
        self.eta = spectral_efficiency(spec)
        self.activations = enumerate_legal_activations(spec.n_t, spec.n_a)
        if spec.kind in MODULATED:
            constellation = qam_constellation(spec.m)
        elif spec.quadrature:
            constellation = np.array([QSSK_SYMBOL])
        else:
            constellation = np.array([1.0 + 0.0j])

        idx_bits = spec.index_bits
        sym_bits = spec.symbol_bits
        sym_mask = (1 << sym_bits) - 1
        idx_mask = (1 << idx_bits) - 1
        root = 1.0 / math.sqrt(spec.n_a)

        words = []
        for label in range(2**self.eta):
            sym_idx = label & sym_mask
            omega = complex(constellation[sym_idx])
            tx = np.zeros(spec.n_t, dtype=complex)
            if spec.quadrature:
                re_idx = (label >> (idx_bits + sym_bits)) & idx_mask
                im_idx = (label >> sym_bits) & idx_mask
                act_re = self.activations[re_idx]
                act_im = self.activations[im_idx]
                for a in act_re:
                    tx[a] += omega.real * root
                for a in act_im:
                    tx[a] += 1j * omega.imag * root
            else:
                act_re = act_im = self.activations[(label >> sym_bits) & idx_mask]
                for a in act_re:
                    tx[a] = omega * root
            tx.flags.writeable = False
            words.append(Codeword(label, act_re, act_im, omega, tx))
        self.words = words
        self._assert_distinct()

    def _assert_distinct(self):
        X = self.tx_matrix()
        d2 = (
            np.sum(np.abs(X) ** 2, axis=0)[:, None]
            + np.sum(np.abs(X) ** 2, axis=0)[None, :]
            - 2.0 * np.real(X.conj().T @ X)
        )
        np.fill_diagonal(d2, np.inf)
        if d2.min() < 1e-12:
            raise ValueError("degenerate codebook: duplicate transmit vectors")

    def __len__(self) -> int:
        return len(self.words)

    def tx_matrix(self) -> np.ndarray:
        """All transmit vectors as columns, shape (n_t, 2^eta)."""
        return np.stack([w.tx_vector for w in self.words], axis=1)


def build_codebook(spec: SchemeSpec) -> Codebook:
    return Codebook(spec)


def bit_errors(j: int, k: int, eta: int | None = None) -> int:
    """Hamming distance between two labels."""
    if j < 0 or k < 0:
        raise ValueError("labels must be non-negative")
    if eta is not None and (j >= 2**eta or k >= 2**eta):
        raise ValueError("label out of range for eta bits")
    return bin(j ^ k).count("1")
