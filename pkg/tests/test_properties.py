"""Randomized invariants of the closed forms.

Each property holds for every admissible configuration, so the inputs are
drawn broadly rather than pinned to reference values.
"""

import math

from hypothesis import given, settings, strategies as st

from mimomar import (
    EMPTY_PROFILE,
    InterferenceProfile,
    SystemConfig,
    sinr_icsi,
    sinr_pcsi,
    sumrate_icsi,
    sumrate_icsi_opt,
    sumrate_pcsi,
)

SETTINGS = settings(max_examples=40, deadline=None, derandomize=True)

betas_st = st.lists(
    st.floats(min_value=0.1, max_value=2.0, allow_nan=False), min_size=1, max_size=6
)
gamma_st = st.floats(min_value=1e-3, max_value=5.0, allow_nan=False)
m_st = st.integers(min_value=2, max_value=256)
intf_total_st = st.floats(min_value=1e-3, max_value=3.0, allow_nan=False)
split_st = st.lists(
    st.floats(min_value=0.05, max_value=1.0, allow_nan=False), min_size=1, max_size=5
)


def make_config(m, betas, extra_slots=4):
    k = len(betas)
    n_u = k + 1 + extra_slots
    return SystemConfig(M=m, K=k, N_u=n_u, N_c=n_u, betas=tuple(betas))


def normalized_profile(weights, total):
    scale = total / math.fsum(weights)
    return InterferenceProfile(gammas=tuple(w * scale for w in weights))


def users(cfg):
    return range(1, cfg.K + 1)


class TestEqualSplitDominance:
    @SETTINGS
    @given(m=m_st, betas=betas_st, gamma=gamma_st, total=intf_total_st, split=split_st)
    def test_uniform_split_maximizes_icsi_sinr(self, m, betas, gamma, total, split):
        cfg = make_config(m, betas)
        tau = cfg.K
        uniform = InterferenceProfile.uniform(total, len(split))
        skewed = normalized_profile(split, total)
        for k in users(cfg):
            best = sinr_icsi(cfg, tau, k, gamma, uniform)
            other = sinr_icsi(cfg, tau, k, gamma, skewed)
            assert best >= other * (1.0 - 1e-12)

    @SETTINGS
    @given(m=m_st, betas=betas_st, gamma=gamma_st, total=intf_total_st, split=split_st)
    def test_pcsi_sinr_ignores_the_split(self, m, betas, gamma, total, split):
        # perfect-CSI forms depend on the aggregate power only, so resplitting
        # it without changing the total (halving is exact) changes nothing
        cfg = make_config(m, betas)
        skewed = normalized_profile(split, total)
        agg = skewed.gamma_b
        concentrated = InterferenceProfile(gammas=(agg,))
        halved = InterferenceProfile(gammas=(agg / 2.0, agg / 2.0))
        for k in users(cfg):
            reference = sinr_pcsi(cfg, k, gamma, skewed)
            assert sinr_pcsi(cfg, k, gamma, concentrated) == reference
            assert sinr_pcsi(cfg, k, gamma, halved) == reference


class TestMonotonicity:
    @SETTINGS
    @given(m=m_st, betas=betas_st, gamma=gamma_st, total=intf_total_st)
    def test_rate_increases_with_transmit_power(self, m, betas, gamma, total):
        cfg = make_config(m, betas)
        intf = InterferenceProfile.uniform(total, 2)
        tau = cfg.K
        for fn in (
            lambda g: sumrate_pcsi(cfg, g, intf),
            lambda g: sumrate_icsi(cfg, tau, g, intf),
        ):
            assert fn(gamma * 1.5) > fn(gamma)

    @SETTINGS
    @given(m=m_st, betas=betas_st, gamma=gamma_st, total=intf_total_st)
    def test_rate_decreases_with_interference(self, m, betas, gamma, total):
        cfg = make_config(m, betas)
        weak = InterferenceProfile.uniform(total, 3)
        strong = InterferenceProfile.uniform(total * 2.0, 3)
        tau = cfg.K
        assert sumrate_pcsi(cfg, gamma, weak) > sumrate_pcsi(cfg, gamma, strong)
        assert sumrate_icsi(cfg, tau, gamma, weak) > sumrate_icsi(
            cfg, tau, gamma, strong
        )

    @SETTINGS
    @given(betas=betas_st, gamma=gamma_st, total=intf_total_st)
    def test_rate_increases_with_antennas(self, betas, gamma, total):
        intf = InterferenceProfile.uniform(total, 2)
        small = make_config(16, betas)
        large = make_config(64, betas)
        assert sumrate_pcsi(large, gamma, intf) > sumrate_pcsi(small, gamma, intf)
        assert sumrate_icsi_opt(large, gamma, intf)[0] > sumrate_icsi_opt(
            small, gamma, intf
        )[0]


class TestTrainingOptimization:
    @SETTINGS
    @given(m=m_st, betas=betas_st, gamma=gamma_st, total=intf_total_st)
    def test_opt_matches_explicit_scan(self, m, betas, gamma, total):
        cfg = make_config(m, betas)
        intf = InterferenceProfile.uniform(total, 2)
        rate, tau_star = sumrate_icsi_opt(cfg, gamma, intf)
        scanned = {
            tau: sumrate_icsi(cfg, tau, gamma, intf) for tau in range(cfg.K, cfg.N_u)
        }
        assert rate == max(scanned.values())
        assert scanned[tau_star] == rate
        # ties resolve toward the shortest training length
        assert all(scanned[t] < rate for t in range(cfg.K, tau_star))

    @SETTINGS
    @given(m=m_st, betas=betas_st, gamma=gamma_st)
    def test_no_interference_is_a_special_case(self, m, betas, gamma):
        cfg = make_config(m, betas)
        tau = cfg.K
        for k in users(cfg):
            empty = InterferenceProfile(gammas=())
            assert sinr_icsi(cfg, tau, k, gamma, empty) == sinr_icsi(
                cfg, tau, k, gamma, EMPTY_PROFILE
            )
