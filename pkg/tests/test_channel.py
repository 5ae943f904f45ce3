"""BPSK mapping, majority demodulation, and the noisy extension."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import collisioncode as cc
from conftest import cached_codebook, load_golden
import oracles

# (s1, s3) -> (a1 + a3, s2): the two-transmitter demapping table
PNC_TABLE = [
    ((1, 1), 2, 0),
    ((0, 1), 0, 1),
    ((1, 0), 0, 1),
    ((0, 0), -2, 0),
]


class TestModulation:
    def test_mapping(self):
        assert cc.modulate(1) == 1
        assert cc.modulate(0) == -1

    def test_bijection(self):
        assert {cc.modulate(b) for b in (0, 1)} == {-1, 1}

    def test_rejects_non_bits(self):
        for bad in (2, -1, 0.5):
            with pytest.raises(ValueError):
                cc.modulate(bad)


class TestPncXor:
    @pytest.mark.parametrize("bits,amp_sum,expected", PNC_TABLE)
    def test_table_rows(self, bits, amp_sum, expected):
        s1, s3 = bits
        assert cc.modulate(s1) + cc.modulate(s3) == amp_sum
        assert cc.pnc_xor_map(amp_sum) == expected
        assert expected == s1 ^ s3

    @pytest.mark.parametrize("bad", [1, -1, 3, 4])
    def test_rejects_impossible_sums(self, bad):
        with pytest.raises(ValueError):
            cc.pnc_xor_map(bad)

    def test_per_chip_xor_on_codebook_rows(self):
        cb = cached_codebook(3)
        m = cb.matrix()
        for i, j in itertools.combinations(range(3), 2):
            for c in range(cb.v_length):
                amp = cc.modulate(int(m[i, c])) + cc.modulate(int(m[j, c]))
                assert cc.pnc_xor_map(amp) == int(m[i, c]) ^ int(m[j, c])


class TestMajority:
    @pytest.mark.parametrize("bits,expected", [
        ((0, 0, 0), 0), ((0, 0, 1), 0), ((0, 1, 0), 0), ((0, 1, 1), 1),
        ((1, 0, 0), 0), ((1, 0, 1), 1), ((1, 1, 0), 1), ((1, 1, 1), 1),
    ])
    def test_three_transmitters(self, bits, expected):
        assert cc.majority_demod_bit(bits) == expected

    def test_tie_defaults_to_zero(self):
        assert cc.majority_demod_bit((0, 1)) == 0
        assert cc.majority_demod_bit((1, 0, 1, 0)) == 0

    def test_single_transmitter_is_identity(self):
        assert cc.majority_demod_bit([1]) == 1
        assert cc.majority_demod_bit([0]) == 0

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            cc.majority_demod_bit([])
        with pytest.raises(ValueError):
            cc.majority_demod_bit([0, 2])

    @given(st.lists(st.integers(0, 1), min_size=1, max_size=15))
    def test_matches_sign_of_amplitude_sum(self, bits):
        total = sum(cc.modulate(b) for b in bits)
        assert cc.majority_demod_bit(bits) == (1 if total > 0 else 0)


def subset_strategy(n, min_size=0):
    return st.sets(st.integers(1, n), min_size=min_size).map(frozenset)


class TestSuperpose:
    def test_two_station_example(self):
        assert cc.superpose(cached_codebook(3), {1, 2}).sums.tolist() == [2, 0, 0]

    def test_silence(self):
        assert cc.superpose(cached_codebook(3), set()).sums.tolist() == [0, 0, 0]

    def test_full_set_sums_to_one_everywhere(self):
        assert cc.superpose(cached_codebook(3), {1, 2, 3}).sums.tolist() == [1, 1, 1]

    def test_rejects_unknown_station(self):
        with pytest.raises(ValueError):
            cc.superpose(cached_codebook(3), {1, 4})

    @given(st.integers(1, 9), st.data())
    @settings(max_examples=60)
    def test_parity_and_bound(self, n, data):
        cb = cached_codebook(n)
        subset = data.draw(subset_strategy(cb.n_stations))
        sums = cc.superpose(cb, subset).sums
        size = len(subset)
        assert (np.abs(sums) <= size).all()
        assert ((sums - size) % 2 == 0).all()

    @given(st.integers(1, 9), st.data())
    @settings(max_examples=60)
    def test_disjoint_union_adds(self, n, data):
        cb = cached_codebook(n)
        g1 = data.draw(subset_strategy(cb.n_stations))
        g2 = data.draw(subset_strategy(cb.n_stations)) - g1
        lhs = cc.superpose(cb, g1 | g2).sums
        assert np.array_equal(lhs, cc.superpose(cb, g1).sums + cc.superpose(cb, g2).sums)

    @given(st.integers(1, 9), st.data())
    @settings(max_examples=60)
    def test_nested_difference_subtracts(self, n, data):
        cb = cached_codebook(n)
        g2 = data.draw(subset_strategy(cb.n_stations))
        g1 = data.draw(st.sets(st.sampled_from(sorted(g2)))) if g2 else frozenset()
        lhs = cc.superpose(cb, g2 - g1).sums
        assert np.array_equal(lhs, cc.superpose(cb, g2).sums - cc.superpose(cb, g1).sums)

    @given(st.integers(1, 9), st.data())
    @settings(max_examples=60)
    def test_matches_oracle(self, n, data):
        cb = cached_codebook(n)
        subset = data.draw(subset_strategy(cb.n_stations, min_size=1))
        rows = oracles.matrix_rows(cb.n_rows)
        expected = [oracles.chip_sum(rows, subset, c + 1)
                    for c in range(cb.v_length)]
        assert cc.superpose(cb, subset).sums.tolist() == expected


class TestDemodulate:
    def test_known_vectors(self):
        cb = cached_codebook(3)
        assert cc.bits_to_str(cc.demodulate(cc.superpose(cb, {1, 2}))) == "100"
        assert cc.bits_to_str(cc.demodulate(cc.superpose(cb, {1, 2, 3}))) == "111"
        assert cc.bits_to_str(cc.demodulate(cc.superpose(cb, set()))) == "000"

    @given(st.integers(1, 9))
    def test_singleton_identity(self, n):
        cb = cached_codebook(n)
        for i in range(1, cb.n_stations + 1):
            demod = cc.demodulate(cc.superpose(cb, {i}))
            assert np.array_equal(demod, cc.codeword_for(cb, i))


class TestNoisyChannel:
    def test_zero_sigma_is_exact(self):
        cb = cached_codebook(3)
        profile = cc.superpose_noisy(cb, {1, 2, 3}, 0.0, 99)
        assert profile.samples.tolist() == [1.0, 1.0, 1.0]
        bits = cc.threshold_noisy(cc.superpose_noisy(cb, {1, 2}, 0.0, 0))
        assert cc.bits_to_str(bits) == "100"

    def test_same_seed_same_samples(self):
        cb = cached_codebook(5)
        a = cc.superpose_noisy(cb, {1, 4}, 0.3, 1234)
        b = cc.superpose_noisy(cb, {1, 4}, 0.3, 1234)
        assert np.array_equal(a.samples, b.samples)
        c = cc.superpose_noisy(cb, {1, 4}, 0.3, 1235)
        assert not np.array_equal(a.samples, c.samples)

    def test_golden_samples(self):
        golden = load_golden("noisy_profile_n3.json")
        profile = cc.superpose_noisy(cached_codebook(3), set(golden["stations"]),
                                     golden["sigma"], golden["seed"])
        assert profile.samples.tolist() == golden["samples"]
        assert (np.abs(profile.samples - np.array([1, 1, -1])) <= 1.0).all()

    def test_rejects_bad_parameters(self):
        cb = cached_codebook(3)
        with pytest.raises(ValueError):
            cc.superpose_noisy(cb, {1}, -0.1, 0)
        with pytest.raises(ValueError):
            cc.superpose_noisy(cb, {1}, 0.1, -1)

    def test_threshold_midpoint(self):
        profile = cc.NoisyProfile(np.array([0.49, 0.51, -3.0]), 1.0, 0)
        assert cc.bits_to_str(cc.threshold_noisy(profile)) == "010"

    def test_low_noise_agrees_with_ideal_demodulation(self):
        # Monte Carlo over seeds 1..10000 at sigma=0.1; the 0.5 threshold
        # sits five sigmas from both the tie level and the minimum
        # positive sum, so disagreement should be essentially absent.
        cb = cached_codebook(3)
        subsets = [frozenset(s) for s in oracles.nonempty_subsets(3)]
        agree = 0
        for seed in range(1, 10001):
            subset = subsets[seed % len(subsets)]
            noisy = cc.threshold_noisy(cc.superpose_noisy(cb, subset, 0.1, seed))
            ideal = cc.demodulate(cc.superpose(cb, subset))
            agree += np.array_equal(noisy, ideal)
        assert agree >= 9900
