import numpy as np
import pytest

from sboxtraj import (
    RngStream,
    SBox,
    ccv,
    ccv_incremental,
    ccv_key,
    constant_sbox,
    cross_correlation_fast,
    cross_correlation_naive,
    hw_class_shuffle,
    identity_sbox,
    kappa_profile,
    mto,
    mto_beta,
    mto_beta_zero,
    random_bijective_sbox,
    rto,
    rto_beta,
    rto_beta_zero,
    swap_outputs,
    transparency_order,
)
from sboxtraj.metrics import ccv_key_from_profile
from sboxtraj.sbox import IndexOutOfRangeError

from oracles import (
    AES_CCV,
    AES_MTO0,
    AES_RTO0,
    AES_SBOX,
    AES_TO,
    ccv_bruteforce_ordered,
    cross_correlation_triple_loop,
    mto_beta_direct,
    rto_beta_direct,
    to_direct,
)

REL = 1e-12


def aes_sbox():
    return SBox(8, 8, AES_SBOX)


class TestKappaProfile:
    def test_identity_n2(self):
        profile = kappa_profile(identity_sbox(2))
        assert profile.values.tolist() == [0, 4, 4, 8]

    def test_constant_all_zero(self):
        profile = kappa_profile(constant_sbox(3, 3, 6))
        assert not profile.values.any()

    def test_invariant_under_class_shuffle(self):
        for seed in range(10):
            sbox = random_bijective_sbox(4, RngStream(seed, (0,)))
            shuffled = hw_class_shuffle(sbox, RngStream(seed, (1,)))
            assert np.array_equal(
                kappa_profile(sbox).values, kappa_profile(shuffled).values
            )


class TestCcv:
    def test_constant_zero(self):
        assert ccv(constant_sbox(4, 4, 3)) == 0.0

    def test_identity_n2(self):
        assert ccv(identity_sbox(2)) == pytest.approx(2 / 9, rel=REL)

    def test_aes_frozen_oracle_value(self):
        assert ccv(aes_sbox()) == pytest.approx(AES_CCV, rel=REL)

    def test_key_fields_identity_n2(self):
        key = ccv_key(identity_sbox(2))
        assert (key.count, key.sum_s, key.sum_s2, key.key) == (3, 16, 96, 32)
        assert key.value == pytest.approx(32 / (9 * 16), rel=REL)

    @pytest.mark.parametrize("n", [3, 4])
    def test_matches_ordered_pair_bruteforce(self, n):
        for seed in range(8):
            sbox = random_bijective_sbox(n, RngStream(seed))
            assert ccv(sbox) == pytest.approx(
                ccv_bruteforce_ordered(sbox.table, n), rel=REL
            )

    def test_bruteforce_on_non_bijective(self):
        sbox = SBox(3, 3, (0, 5, 5, 1, 7, 2, 2, 4))
        assert ccv(sbox) == pytest.approx(ccv_bruteforce_ordered(sbox.table, 3), rel=REL)


class TestCrossCorrelation:
    def test_identity_n2_table(self):
        table = cross_correlation_naive(identity_sbox(2))
        for i in range(2):
            for a in range(4):
                expected = 4 * (-1) ** ((a >> i) & 1)
                assert table.c[i, i, a] == expected
        assert not table.c[0, 1].any() and not table.c[1, 0].any()

    def test_zero_shift_autocorrelation(self):
        sbox = random_bijective_sbox(4, RngStream(11))
        table = cross_correlation_naive(sbox)
        for i in range(4):
            assert table.c[i, i, 0] == 16

    def test_constant_table(self):
        value = 0b101
        table = cross_correlation_naive(constant_sbox(3, 3, value))
        for i in range(3):
            for j in range(3):
                sign = (-1) ** (((value >> i) & 1) ^ ((value >> j) & 1))
                assert (table.c[i, j] == sign * 8).all()

    def test_matches_triple_loop_oracle(self):
        sbox = random_bijective_sbox(3, RngStream(4))
        oracle = cross_correlation_triple_loop(sbox.table, 3, 3)
        table = cross_correlation_naive(sbox)
        assert table.c.tolist() == oracle

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_fast_equals_naive(self, n):
        for seed in range(10):
            sbox = random_bijective_sbox(n, RngStream(seed))
            assert np.array_equal(
                cross_correlation_fast(sbox).c, cross_correlation_naive(sbox).c
            )

    def test_fast_equals_naive_aes(self):
        assert np.array_equal(
            cross_correlation_fast(aes_sbox()).c, cross_correlation_naive(aes_sbox()).c
        )

    def test_entry_parity(self):
        sbox = random_bijective_sbox(4, RngStream(21))
        table = cross_correlation_fast(sbox)
        assert not ((table.c - 16) % 2).any()
        assert int(np.abs(table.c).max()) <= 16


class TestTransparencyOrder:
    def test_constant_zero(self):
        assert transparency_order(constant_sbox(4, 4, 9)) == 0.0

    def test_identity_n2(self):
        assert transparency_order(identity_sbox(2)) == pytest.approx(4 / 3, rel=REL)

    def test_aes_frozen_oracle_value(self):
        assert transparency_order(aes_sbox()) == pytest.approx(AES_TO, rel=REL)

    @pytest.mark.parametrize("n", [3, 4])
    def test_matches_direct_sum_oracle(self, n):
        for seed in range(8):
            sbox = random_bijective_sbox(n, RngStream(seed))
            assert transparency_order(sbox) == pytest.approx(
                to_direct(sbox.table, n, n), rel=REL
            )

    def test_table_argument_paths_agree(self):
        sbox = random_bijective_sbox(4, RngStream(13))
        plain = transparency_order(sbox)
        assert transparency_order(sbox, cross_correlation_naive(sbox)) == plain
        assert transparency_order(sbox, cross_correlation_fast(sbox)) == plain


class TestMtoRto:
    def test_identity_mto0_zero(self):
        assert mto_beta_zero(identity_sbox(2)) == 0.0

    def test_identity_rto0(self):
        assert rto_beta_zero(identity_sbox(2)) == pytest.approx(4 / 3, rel=REL)

    def test_constant_beta_zero(self):
        sbox = constant_sbox(2, 2, 0)
        assert mto_beta_zero(sbox) == pytest.approx(-2.0, rel=REL)
        assert rto_beta_zero(sbox) == pytest.approx(-2.0, rel=REL)

    def test_aes_frozen_oracle_values(self):
        table = cross_correlation_fast(aes_sbox())
        assert mto_beta_zero(aes_sbox(), table) == pytest.approx(AES_MTO0, rel=REL)
        assert rto_beta_zero(aes_sbox(), table) == pytest.approx(AES_RTO0, rel=REL)

    def test_complement_symmetry(self):
        sbox = random_bijective_sbox(4, RngStream(17))
        for beta in range(16):
            comp = beta ^ 0b1111
            assert mto_beta(sbox, beta) == mto_beta(sbox, comp)
            assert rto_beta(sbox, beta) == rto_beta(sbox, comp)

    @pytest.mark.parametrize("seed", range(4))
    def test_beta_values_match_direct_oracle(self, seed):
        sbox = random_bijective_sbox(3, RngStream(seed))
        for beta in range(8):
            assert mto_beta(sbox, beta) == pytest.approx(
                mto_beta_direct(sbox.table, 3, 3, beta), rel=REL
            )
            assert rto_beta(sbox, beta) == pytest.approx(
                rto_beta_direct(sbox.table, 3, 3, beta), rel=REL
            )

    def test_max_equals_full_beta_bruteforce(self):
        for seed in range(6):
            sbox = random_bijective_sbox(4, RngStream(seed, (5,)))
            assert mto(sbox) == max(mto_beta(sbox, b) for b in range(16))
            assert rto(sbox) == max(rto_beta(sbox, b) for b in range(16))

    def test_beta_out_of_range(self):
        with pytest.raises(ValueError):
            mto_beta(identity_sbox(2), 4)

    @pytest.mark.parametrize("n", [4, 5])
    def test_inequalities(self, n):
        for seed in range(10):
            sbox = random_bijective_sbox(n, RngStream(seed, (7,)))
            to_v = transparency_order(sbox)
            mto0 = mto_beta_zero(sbox)
            rto0 = rto_beta_zero(sbox)
            assert 0.0 <= to_v <= n
            assert mto0 <= rto0 <= n
            assert mto(sbox) >= mto0
            assert rto(sbox) >= rto0


class TestCcvIncremental:
    def test_matches_full_recompute(self):
        sbox = random_bijective_sbox(4, RngStream(31))
        key = ccv_key(sbox)
        profile = kappa_profile(sbox)
        for i, j in [(0, 1), (3, 12), (5, 6), (0, 15)]:
            new_key, new_profile = ccv_incremental(sbox, key, profile, i, j)
            swapped = swap_outputs(sbox, i, j)
            assert new_key == ccv_key(swapped)
            assert np.array_equal(new_profile.values, kappa_profile(swapped).values)

    def test_equal_weight_swap_keeps_key(self):
        sbox = identity_sbox(3)
        key = ccv_key(sbox)
        profile = kappa_profile(sbox)
        # positions 1 and 2 hold outputs 1 and 2, both of weight 1
        new_key, new_profile = ccv_incremental(sbox, key, profile, 1, 2)
        assert new_key == key
        assert np.array_equal(new_profile.values, profile.values)

    def test_hundred_chained_swaps_on_5x5(self):
        rng = RngStream(77)
        sbox = random_bijective_sbox(5, rng)
        key = ccv_key(sbox)
        profile = kappa_profile(sbox)
        for step in range(100):
            i = rng.randrange(32)
            j = rng.randrange(32)
            if i == j:
                continue
            key, profile = ccv_incremental(sbox, key, profile, i, j)
            sbox = swap_outputs(sbox, i, j)
        assert key == ccv_key(sbox)
        assert np.array_equal(profile.values, kappa_profile(sbox).values)

    def test_bad_positions(self):
        sbox = identity_sbox(3)
        key = ccv_key(sbox)
        profile = kappa_profile(sbox)
        with pytest.raises(IndexOutOfRangeError):
            ccv_incremental(sbox, key, profile, 2, 2)
        with pytest.raises(IndexOutOfRangeError):
            ccv_incremental(sbox, key, profile, 0, 8)


class TestShuffleInvariance:
    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_ccv_exactly_invariant_under_class_shuffle(self, n):
        for seed in range(20):
            sbox = random_bijective_sbox(n, RngStream(seed, (0,)))
            shuffled = hw_class_shuffle(sbox, RngStream(seed, (1,)))
            assert ccv_key(sbox) == ccv_key(shuffled)

    def test_consistency_key_vs_profile(self):
        sbox = random_bijective_sbox(4, RngStream(55))
        assert ccv_key(sbox) == ccv_key_from_profile(kappa_profile(sbox))
