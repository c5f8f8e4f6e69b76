"""Side-channel resistance metrics: CCV, TO, MTO, RTO.

All four metrics reduce to integer sums over the S-box table, so every
function here accumulates in exact integer arithmetic and divides once at the
end; results are deterministic to the bit.

Component i of an S-box output is bit i (least-significant first), and bit i
of a pre-charge value beta addresses the same component.

The cross-correlation spectrum C[i, j, a] = sum_x (-1)^(F_i(x) xor F_j(x^a))
is the shared backbone of TO/MTO/RTO.  It has a direct O(m^2 4^n) evaluation
(`cross_correlation_naive`) and an exactly equivalent O(m^2 2^n n) fast path
via the Walsh-Hadamard correlation theorem (`cross_correlation_fast`).
"""

from dataclasses import dataclass

import numpy as np

from .sbox import IndexOutOfRangeError, SBox


def _hw_table(sbox: SBox) -> np.ndarray:
    """Hamming weight of every table entry, as int64."""
    return np.bitwise_count(np.asarray(sbox.table, dtype=np.uint32)).astype(np.int64)


def _component_signs(sbox: SBox) -> np.ndarray:
    """(m, 2^n) matrix of (-1)^(F_i(x)) values."""
    table = np.asarray(sbox.table, dtype=np.int64)
    bits = (table[None, :] >> np.arange(sbox.m)[:, None]) & 1
    return (1 - 2 * bits).astype(np.int64)


def _fwht_rows(mat: np.ndarray) -> np.ndarray:
    """Fast Walsh-Hadamard transform of each row (natural ordering, unscaled).

    Self-inverse up to a factor of the row length.
    """
    a = np.array(mat, dtype=np.int64)
    rows, size = a.shape
    h = 1
    while h < size:
        a = a.reshape(rows, size // (2 * h), 2, h)
        top = a[:, :, 0, :] + a[:, :, 1, :]
        bottom = a[:, :, 0, :] - a[:, :, 1, :]
        a = np.stack((top, bottom), axis=2).reshape(rows, size)
        h *= 2
    return a


# ---------------------------------------------------------------------------
# Confusion coefficient variance


@dataclass(frozen=True, eq=False)
class KappaProfile:
    """Integer confusion-coefficient profile under the Hamming-weight leakage.

    values[d] = sum_x (HW(F(x)) - HW(F(x^d)))^2 for key difference d >= 1;
    values[0] is unused and fixed at 0.  The (real-valued) confusion
    coefficient for difference d is values[d] / 2^n.
    """

    n: int
    m: int
    values: np.ndarray

    def __post_init__(self):
        self.values.flags.writeable = False


@dataclass(frozen=True)
class CcvKey:
    """Exact integer surrogate that orders S-boxes identically to CCV.

    With N = 2^n - 1 nonzero key differences and S the integer profile,
    key = N * sum(S^2) - sum(S)^2, and CCV = key / (N^2 * 2^(2n)).  Climb
    comparisons use `key` so acceptance never depends on float rounding.
    """

    n: int
    count: int
    sum_s: int
    sum_s2: int
    key: int

    @property
    def value(self) -> float:
        """CCV as a float."""
        return self.key / (self.count * self.count * (1 << (2 * self.n)))


def kappa_profile(sbox: SBox) -> KappaProfile:
    """Integer leakage-difference profile over all nonzero key differences."""
    h = _hw_table(sbox)
    size = sbox.size
    xs = np.arange(size)
    values = np.zeros(size, dtype=np.int64)
    for d in range(1, size):
        diff = h - h[xs ^ d]
        values[d] = np.dot(diff, diff)
    return KappaProfile(sbox.n, sbox.m, values)


def ccv_key_from_profile(profile: KappaProfile) -> CcvKey:
    """Exact comparison key computed from a profile (arbitrary-precision)."""
    values = [int(v) for v in profile.values[1:]]
    count = len(values)
    sum_s = sum(values)
    sum_s2 = sum(v * v for v in values)
    return CcvKey(profile.n, count, sum_s, sum_s2, count * sum_s2 - sum_s * sum_s)


def ccv_key(sbox: SBox) -> CcvKey:
    """Exact integer CCV key of an S-box."""
    return ccv_key_from_profile(kappa_profile(sbox))


def ccv(sbox: SBox) -> float:
    """Confusion coefficient variance under the Hamming-weight model.

    Population variance, over the 2^n - 1 nonzero key differences, of the
    expected squared leakage difference; higher means more SCA-resistant.
    """
    return ccv_key(sbox).value


def ccv_incremental(
    sbox: SBox, key: CcvKey, profile: KappaProfile, i: int, j: int
) -> tuple[CcvKey, KappaProfile]:
    """Key and profile of swap_outputs(sbox, i, j), by delta update.

    Only the summands at x in {i, j, i^d, j^d} change for each difference d,
    so the update costs O(2^n) instead of O(4^n).  The result equals a full
    recomputation exactly.
    """
    size = sbox.size
    if i == j or not (0 <= i < size and 0 <= j < size):
        raise IndexOutOfRangeError(f"swap positions ({i}, {j}) invalid for size {size}")
    h = _hw_table(sbox)
    hi = int(h[i])
    hj = int(h[j])
    if hi == hj:
        # Equal-weight swap: the HW sequence, hence the profile, is unchanged.
        return key, profile
    deltas = np.arange(1, size)
    hid = h[i ^ deltas]
    hjd = h[j ^ deltas]
    ds = 2 * (
        (hj - hid) * (hj - hid)
        - (hi - hid) * (hi - hid)
        + (hi - hjd) * (hi - hjd)
        - (hj - hjd) * (hj - hjd)
    )
    # The pair {i, j} maps to itself under d = i^j and contributes no change.
    ds[(i ^ j) - 1] = 0
    new_values = profile.values.copy()
    new_values[1:] += ds
    new_sum_s = key.sum_s + int(ds.sum())
    new_sum_s2 = key.sum_s2 + int(np.dot(ds, ds + 2 * profile.values[1:]))
    new_key = CcvKey(
        key.n,
        key.count,
        new_sum_s,
        new_sum_s2,
        key.count * new_sum_s2 - new_sum_s * new_sum_s,
    )
    return new_key, KappaProfile(profile.n, profile.m, new_values)


# ---------------------------------------------------------------------------
# Cross-correlation spectrum and the transparency-order family


@dataclass(frozen=True, eq=False)
class CrossCorrelationTable:
    """Cross-correlation spectrum of all component pairs.

    c[i, j, a] = sum_x (-1)^(F_i(x) xor F_j(x^a)); shape (m, m, 2^n).
    """

    n: int
    m: int
    c: np.ndarray

    def __post_init__(self):
        self.c.flags.writeable = False


def cross_correlation_naive(sbox: SBox) -> CrossCorrelationTable:
    """Direct O(m^2 4^n) summation of the cross-correlation spectrum."""
    signs = _component_signs(sbox)
    size = sbox.size
    xs = np.arange(size)
    c = np.empty((sbox.m, sbox.m, size), dtype=np.int64)
    for a in range(size):
        shifted = signs[:, xs ^ a]
        c[:, :, a] = signs @ shifted.T
    return CrossCorrelationTable(sbox.n, sbox.m, c)


def cross_correlation_fast(sbox: SBox) -> CrossCorrelationTable:
    """Cross-correlation spectrum via the Walsh-Hadamard correlation theorem.

    For each component pair the correlation sequence is the inverse transform
    of the pointwise product of the components' spectra; all divisions are
    exact, so the table equals the naive one entry-for-entry.
    """
    signs = _component_signs(sbox)
    spectra = _fwht_rows(signs)
    size = sbox.size
    c = np.empty((sbox.m, sbox.m, size), dtype=np.int64)
    for i in range(sbox.m):
        c[i] = _fwht_rows(spectra[i][None, :] * spectra) // size
    return CrossCorrelationTable(sbox.n, sbox.m, c)


def cross_correlation(sbox: SBox) -> CrossCorrelationTable:
    """Default spectrum: naive summation up to n = 5, fast transform above."""
    if sbox.n <= 5:
        return cross_correlation_naive(sbox)
    return cross_correlation_fast(sbox)


def _norm_denominator(sbox: SBox) -> int:
    return sbox.size * sbox.size - sbox.size


def transparency_order(sbox: SBox, table: CrossCorrelationTable | None = None) -> float:
    """Transparency order under the Hamming-weight model (lower = stronger).

    TO(F) = m - (1/(4^n - 2^n)) * sum_{a != 0} |m 2^n - 2 sum_x HW(F(x) ^ F(x^a))|.
    Each a-term equals |sum_j C[j, j, a]|, the absolute diagonal column sum of
    the cross-correlation spectrum, which is how it is accumulated here
    (exactly, in integers).
    """
    if table is not None:
        diag_sum = np.einsum("jja->a", table.c)
    else:
        spectra = _fwht_rows(_component_signs(sbox))
        diag = _fwht_rows(spectra * spectra) // sbox.size
        diag_sum = diag.sum(axis=0)
    total = int(np.abs(diag_sum[1:]).sum())
    return sbox.m - total / _norm_denominator(sbox)


def _beta_signs(sbox: SBox, beta: int) -> np.ndarray:
    if not 0 <= beta < (1 << sbox.m):
        raise ValueError(f"beta {beta} does not fit in m={sbox.m} bits")
    return (1 - 2 * ((beta >> np.arange(sbox.m)) & 1)).astype(np.int64)


def mto_beta(sbox: SBox, beta: int, table: CrossCorrelationTable | None = None) -> float:
    """Modified transparency order for one pre-charge beta.

    m - (1/(4^n - 2^n)) * sum_{a != 0} sum_j |sum_i (-1)^(b_i ^ b_j) C[i, j, a]|;
    the absolute value sits inside the outer component sum.
    """
    if table is None:
        table = cross_correlation(sbox)
    signs = _beta_signs(sbox, beta)
    inner = np.einsum("i,ija->ja", signs, table.c)
    # |s_j * inner[j]| = |inner[j]| since s_j is a sign.
    total = int(np.abs(inner[:, 1:]).sum())
    return sbox.m - total / _norm_denominator(sbox)


def rto_beta(sbox: SBox, beta: int, table: CrossCorrelationTable | None = None) -> float:
    """Revised transparency order for one pre-charge beta.

    Same sum as mto_beta but with the absolute value outside both component
    sums, so rto_beta >= mto_beta pointwise.
    """
    if table is None:
        table = cross_correlation(sbox)
    signs = _beta_signs(sbox, beta)
    inner = np.einsum("i,ija->ja", signs, table.c)
    outer = signs @ inner
    total = int(np.abs(outer[1:]).sum())
    return sbox.m - total / _norm_denominator(sbox)


def mto_beta_zero(sbox: SBox, table: CrossCorrelationTable | None = None) -> float:
    """MTO restricted to beta = 0 (the Hamming-weight model)."""
    return mto_beta(sbox, 0, table)


def rto_beta_zero(sbox: SBox, table: CrossCorrelationTable | None = None) -> float:
    """RTO restricted to beta = 0 (the Hamming-weight model)."""
    return rto_beta(sbox, 0, table)


def mto(sbox: SBox, table: CrossCorrelationTable | None = None) -> float:
    """Full MTO: maximum of mto_beta over all pre-charges.

    beta and its complement give identical values, so only the 2^(m-1)
    representatives with the top component clear are enumerated.
    """
    if table is None:
        table = cross_correlation(sbox)
    return max(mto_beta(sbox, beta, table) for beta in range(1 << (sbox.m - 1)))


def rto(sbox: SBox, table: CrossCorrelationTable | None = None) -> float:
    """Full RTO: maximum of rto_beta over complement representatives."""
    if table is None:
        table = cross_correlation(sbox)
    return max(rto_beta(sbox, beta, table) for beta in range(1 << (sbox.m - 1)))
