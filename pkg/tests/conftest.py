"""Shared generators for randomized checks.

Each helper takes an explicit numpy Generator so every test that uses
randomness runs from its own fixed seed and is exactly reproducible.
"""

from __future__ import annotations

import numpy as np

from mimomar import InterferenceProfile, Scenario, SystemConfig

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    # replay the per-criterion verdicts so they survive output capture
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_config(
    rng: np.random.Generator,
    m_range: tuple[int, int] = (8, 128),
    k_range: tuple[int, int] = (1, 8),
) -> SystemConfig:
    M = int(rng.integers(m_range[0], m_range[1] + 1))
    K = int(rng.integers(k_range[0], k_range[1] + 1))
    N_u = K + 1 + int(rng.integers(1, 16))
    betas = tuple(float(b) for b in rng.uniform(0.1, 2.0, size=K))
    return SystemConfig(M=M, K=K, N_u=N_u, N_c=N_u, betas=betas)


def random_profile(
    rng: np.random.Generator, i_range: tuple[int, int] = (0, 4)
) -> InterferenceProfile:
    I = int(rng.integers(i_range[0], i_range[1] + 1))
    if I == 0:
        return InterferenceProfile(())
    return InterferenceProfile(tuple(float(g) for g in rng.uniform(0.0, 1.5, size=I)))


def random_tau(rng: np.random.Generator, cfg: SystemConfig) -> int:
    return int(rng.integers(cfg.K, cfg.N_u))


def feasible_rate(
    rng: np.random.Generator, cfg: SystemConfig, scenario: Scenario
) -> float:
    from mimomar import sumrate_sup

    sup = sumrate_sup(cfg, scenario)
    return float(rng.uniform(0.2, 0.95)) * (1.0 - 1e-3) * sup
