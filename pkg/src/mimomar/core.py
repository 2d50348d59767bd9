"""Closed-form SINR and sum-rate for a massive-MIMO uplink with aliased
out-of-band interference.

Model
-----
An M-antenna base station serves K single-antenna users over i.i.d.
Rayleigh fading with per-user large-scale gains beta_k.  I narrowband
out-of-band interferers leak through the receive bandpass filter and fold
into the useful band after sampling; interferer i contributes an in-band
interference-to-noise ratio gamma_i.  All powers are expressed relative to
the thermal-noise floor (sigma^2 = 1), so gamma = p_u/sigma^2 is the
per-user transmit SNR and gamma_b = sum_i gamma_i the total aliased
interference SNR.

Two receiver scenarios are covered:

* perfect CSI: maximum ratio combining (MRC) with the true channel
  vectors;
* imperfect CSI: MRC with LMMSE channel estimates obtained from
  orthogonal uplink pilots of length tau channel uses, with the
  interferers active during both the pilot and the data phase and their
  channels unchanged across the two phases.

The per-user matched-filter output splits into five terms: the desired
symbol scaled by the mean combining gain (ES), the fluctuation of that
gain around its mean (SIF), multi-user interference including the
estimation-error leakage of the user's own symbol (MUI), beam-combined
aliased interference (BL), and combined thermal noise (EN).  This module
evaluates the exact ensemble mean power of each term and defines the SINR
as the ES power over the summed powers of the other four, which is also
the quantity the Monte-Carlo oracle in ``mimomar.montecarlo`` estimates.
The achievable sum-rate treats everything but ES as worst-case Gaussian
noise; with imperfect CSI it carries the (1 - tau/N_u) pilot-overhead
prefactor.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

__all__ = [
    "Scenario",
    "SystemConfig",
    "InterferenceProfile",
    "OperatingPoint",
    "BpfModel",
    "RateTarget",
    "MarResult",
    "AsymptoticConstants",
    "TermPowers",
    "EMPTY_PROFILE",
    "sinr_pcsi",
    "sumrate_pcsi",
    "sinr_icsi",
    "sumrate_icsi",
    "sumrate_icsi_opt",
    "sumrate_sup",
    "sinr_icsi_limit",
    "term_powers_pcsi",
    "term_powers_icsi",
]

LN2 = math.log(2.0)


class Scenario(enum.Enum):
    """Receiver knowledge of the channel."""

    PERFECT_CSI = "pcsi"
    IMPERFECT_CSI = "icsi"

    @classmethod
    def parse(cls, token: str) -> "Scenario":
        for member in cls:
            if token == member.value:
                return member
        raise ValueError(f"unknown scenario {token!r}; expected 'pcsi' or 'icsi'")


# ---------------------------------------------------------------------------
# domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SystemConfig:
    """Static system geometry and frame structure."""

    M: int                      # base-station antennas
    K: int                      # single-antenna user terminals
    N_u: int                    # uplink channel uses per coherence interval
    N_c: int                    # coherence interval length, channel uses
    betas: tuple[float, ...]    # per-user large-scale gains beta_k, linear

    def __post_init__(self) -> None:
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if self.M < 1:
            raise ValueError("M must be a positive integer")
        if not 1 <= self.K <= self.N_u - 1:
            raise ValueError("K must satisfy 1 <= K <= N_u - 1")
        if self.N_u > self.N_c:
            raise ValueError("N_u must not exceed the coherence interval N_c")
        if len(self.betas) != self.K:
            raise ValueError("betas must have exactly K entries")
        if any(b <= 0.0 or not math.isfinite(b) for b in self.betas):
            raise ValueError("all large-scale gains must be positive and finite")

    @property
    def beta_sum(self) -> float:
        return math.fsum(self.betas)


@dataclass(frozen=True)
class InterferenceProfile:
    """Per-interferer aliased in-band SNRs gamma_i.

    Empty profile (I = 0) means no aliased interference at all.
    """

    gammas: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        if any(g < 0.0 or not math.isfinite(g) for g in self.gammas):
            raise ValueError("all interferer SNRs must be non-negative and finite")

    @property
    def count(self) -> int:
        return len(self.gammas)

    @property
    def gamma_b(self) -> float:
        """Total aliased interference SNR, the exact sum of the entries."""
        return math.fsum(self.gammas)

    @property
    def gamma_sq(self) -> float:
        """Sum of squared entries; the interference skew statistic."""
        return math.fsum(g * g for g in self.gammas)

    @classmethod
    def uniform(cls, gamma_b: float, count: int) -> "InterferenceProfile":
        """Split a total interference SNR evenly over `count` interferers."""
        if count < 0:
            raise ValueError("interferer count must be non-negative")
        if count == 0:
            if gamma_b != 0.0:
                raise ValueError("cannot assign nonzero interference to zero interferers")
            return cls(())
        return cls((gamma_b / count,) * count)


EMPTY_PROFILE = InterferenceProfile(())


@dataclass(frozen=True)
class OperatingPoint:
    """A transmit SNR together with the training length in use.

    tau is None for perfect CSI, where no pilots are sent.  The range
    constraint K <= tau <= N_u - 1 is enforced wherever a SystemConfig is
    available.
    """

    gamma: float
    tau: int | None = None

    def __post_init__(self) -> None:
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise ValueError("gamma must be positive and finite")
        if self.tau is not None and self.tau < 1:
            raise ValueError("tau must be a positive integer when present")


@dataclass(frozen=True)
class BpfModel:
    """Scalar out-of-band model of the receive bandpass filter.

    The filter passes the useful band unchanged and applies a power gain
    A < 1 out of band; interferer i with pre-filter power p_i' (in units
    of the noise floor) aliases to an in-band SNR gamma_i = A * p_i'.
    """

    A: float
    pre_filter_powers: tuple[float, ...]

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "pre_filter_powers", tuple(float(p) for p in self.pre_filter_powers)
        )
        if not 0.0 < self.A <= 1.0:
            raise ValueError("out-of-band gain A must lie in (0, 1]")
        if any(p <= 0.0 or not math.isfinite(p) for p in self.pre_filter_powers):
            raise ValueError("pre-filter interferer powers must be positive and finite")

    def induced_profile(self) -> InterferenceProfile:
        return InterferenceProfile(tuple(self.A * p for p in self.pre_filter_powers))


@dataclass(frozen=True)
class RateTarget:
    """Sum-rate targets without (R) and with (R_prime) aliased interference.

    Exactly one of R_prime / fractional_loss must be given; a fractional
    loss f defines R_prime = (1 - f) * R.
    """

    R: float
    R_prime: float | None = None
    fractional_loss: float | None = None

    def __post_init__(self) -> None:
        if not (self.R > 0.0 and math.isfinite(self.R)):
            raise ValueError("R must be positive and finite")
        if (self.R_prime is None) == (self.fractional_loss is None):
            raise ValueError("give exactly one of R_prime or fractional_loss")
        if self.fractional_loss is not None:
            if not 0.0 < self.fractional_loss < 1.0:
                raise ValueError("fractional_loss must lie in (0, 1)")
            object.__setattr__(self, "R_prime", (1.0 - self.fractional_loss) * self.R)
        assert self.R_prime is not None
        if not 0.0 < self.R_prime < self.R:
            raise ValueError("R_prime must satisfy 0 < R_prime < R")


@dataclass(frozen=True)
class MarResult:
    """Solved operating point and maximum allowable interference ratio.

    r_b is the largest tolerable ratio of total aliased out-of-band
    interference power to the received in-band power 1 + gamma_star *
    sum(beta_q) for the requested sum-rate loss.
    """

    scenario: Scenario
    gamma_star: float
    gamma_b_star: float
    tau_star: int | None
    r_b_linear: float = field(init=False)
    r_b_db: float = field(init=False)

    def __post_init__(self) -> None:
        if self.gamma_star <= 0.0:
            raise ValueError("gamma_star must be positive")
        if self.gamma_b_star < 0.0:
            raise ValueError("gamma_b_star must be non-negative")

    @classmethod
    def from_solution(
        cls,
        scenario: Scenario,
        gamma_star: float,
        gamma_b_star: float,
        tau_star: int | None,
        beta_sum: float,
    ) -> "MarResult":
        result = cls(scenario, gamma_star, gamma_b_star, tau_star)
        r_b = gamma_b_star / (1.0 + gamma_star * beta_sum)
        object.__setattr__(result, "r_b_linear", r_b)
        object.__setattr__(result, "r_b_db", 10.0 * math.log10(r_b))
        return result


@dataclass(frozen=True)
class AsymptoticConstants:
    """Large-M limits of the solved operating point and MAR.

    c is the limit of M * gamma_star (perfect CSI) or sqrt(M) * gamma_star
    (imperfect CSI).  c_limit_mar is the limit of the MAR itself for
    perfect CSI and of sqrt(M) * r_b for imperfect CSI.
    """

    scenario: Scenario
    c: float
    c_limit_mar: float
    tau_star: int | None

    def __post_init__(self) -> None:
        if self.c <= 0.0 or self.c_limit_mar <= 0.0:
            raise ValueError("asymptotic constants must be strictly positive")


@dataclass(frozen=True)
class TermPowers:
    """Exact mean powers of the five matched-filter output terms.

    Directly comparable, term by term, to the empirical powers estimated
    by the Monte-Carlo oracle.  The SINR is the quotient that oracle
    reports: es over the sum of the other four powers.
    """

    es: float
    sif: float
    mui: float
    bl: float
    en: float

    @property
    def sinr(self) -> float:
        return self.es / (self.sif + self.mui + self.bl + self.en)


# ---------------------------------------------------------------------------
# shared validation helpers
# ---------------------------------------------------------------------------


def _check_user_index(cfg: SystemConfig, k: int) -> int:
    # users are indexed 1..K, matching the analytical notation
    if not 1 <= k <= cfg.K:
        raise ValueError(f"user index k={k} outside 1..{cfg.K}")
    return k - 1


def _check_gamma(gamma: float) -> float:
    if not (gamma > 0.0 and math.isfinite(gamma)):
        raise ValueError("gamma must be positive and finite")
    return float(gamma)


def _check_tau(cfg: SystemConfig, tau: int) -> int:
    if not cfg.K <= tau <= cfg.N_u - 1:
        raise ValueError(f"tau={tau} outside [K, N_u - 1] = [{cfg.K}, {cfg.N_u - 1}]")
    return int(tau)


# ---------------------------------------------------------------------------
# perfect CSI
# ---------------------------------------------------------------------------


def _sinr_pcsi_all(cfg: SystemConfig, gamma: float, gamma_b: float) -> np.ndarray:
    betas = np.asarray(cfg.betas)
    other = cfg.beta_sum - betas
    return cfg.M / (1.0 + (1.0 + gamma_b) / (betas * gamma) + other / betas)


def sinr_pcsi(cfg: SystemConfig, k: int, gamma: float, intf: InterferenceProfile) -> float:
    """SINR of user k under MRC with perfectly known channels.

    The effective noise seen by user k consists of thermal noise plus
    aliased interference (jointly worth 1 + gamma_b after combining), the
    user's own combining-gain fluctuation, and the other users' symbols;
    only the total interference power gamma_b matters, not its split
    across interferers.
    """
    idx = _check_user_index(cfg, k)
    gamma = _check_gamma(gamma)
    return float(_sinr_pcsi_all(cfg, gamma, intf.gamma_b)[idx])


def sumrate_pcsi(cfg: SystemConfig, gamma: float, intf: InterferenceProfile) -> float:
    """Achievable sum-rate in bpcu under MRC with perfect CSI."""
    gamma = _check_gamma(gamma)
    sinr = _sinr_pcsi_all(cfg, gamma, intf.gamma_b)
    return float(np.sum(np.log1p(sinr)) / LN2)


def term_powers_pcsi(
    cfg: SystemConfig, k: int, gamma: float, intf: InterferenceProfile
) -> TermPowers:
    """Exact mean powers of the five detector terms with perfect CSI.

    With true channel vectors as combining weights the mean combining
    gain is M * beta_k; the quotient es / (sif + mui + bl + en) equals
    sinr_pcsi identically.
    """
    idx = _check_user_index(cfg, k)
    gamma = _check_gamma(gamma)
    M = cfg.M
    bk = cfg.betas[idx]
    es = gamma * (M * bk) ** 2
    sif = gamma * M * bk * bk
    mui = gamma * M * bk * (cfg.beta_sum - bk)
    bl = M * bk * intf.gamma_b
    en = M * bk
    return TermPowers(es, sif, mui, bl, en)


# ---------------------------------------------------------------------------
# imperfect CSI
# ---------------------------------------------------------------------------


def _icsi_groups(
    M: int, tau: np.ndarray | float, gamma: float, betas: np.ndarray, S: float, Q: float
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Normalized mean powers of the four noise-side detector terms.

    Each group is the exact ensemble mean power of one detector term
    divided by the ES power; the SINR is the reciprocal of their sum.
    Broadcasts over a tau axis so the training-length scan is one
    vectorized evaluation.  With an empty interference profile S = Q = 0
    and the interference-bearing numerators vanish identically, so no
    special casing is needed to avoid indeterminate forms.

    Derivation notes: with LMMSE weights the estimate of user k's channel
    has per-antenna variance alpha_k = tau*gamma*beta_k^2/lambda_k where
    lambda_k = tau*gamma*beta_k + S + 1, and conditioned on the pilot-phase
    interference symbols the estimate entries are Gaussian.  Fourth-moment
    algebra over that conditional law gives, per ES power:

    * gain fluctuation (SIF):  (1/M) * (1 + (M+1) Q / lambda_k^2)
    * multi-user + own-symbol estimation leakage (MUI):
        lambda_k * sum_{q != k} beta_q / (M tau gamma beta_k^2)
        + (S+1)/(M tau gamma beta_k) + (M+1) Q / (M lambda_k^2)
    * beam-combined aliased interference (BL):
        (S lambda_k + M Q) / (M tau gamma^2 beta_k^2)
    * combined noise (EN):  lambda_k / (M tau gamma^2 beta_k^2)

    Q = sum_i gamma_i^2 enters through the interferers' channels being
    shared between the pilot and data phases; at fixed S the uniform
    split minimizes Q and therefore maximizes the SINR.
    """
    lam = tau * gamma * betas + (S + 1.0)
    lam_sq = lam * lam
    other = np.sum(betas) - betas
    inv_es = 1.0 / (M * tau * gamma * betas * betas)
    skew = (M + 1) * Q / (M * lam_sq)
    d_sif = 1.0 / M + skew
    d_mui = lam * other * inv_es + (S + 1.0) / (M * tau * gamma * betas) + skew
    d_bl = (S * lam + M * Q) * inv_es / gamma
    d_en = lam * inv_es / gamma
    return d_sif, d_mui, d_bl, d_en


def _sinr_icsi_all(
    cfg: SystemConfig, tau: np.ndarray | float, gamma: float, intf: InterferenceProfile
) -> np.ndarray:
    betas = np.asarray(cfg.betas)
    d_sif, d_mui, d_bl, d_en = _icsi_groups(
        cfg.M, tau, gamma, betas, intf.gamma_b, intf.gamma_sq
    )
    return 1.0 / (d_sif + d_mui + d_bl + d_en)


def sinr_icsi(
    cfg: SystemConfig, tau: int, k: int, gamma: float, intf: InterferenceProfile
) -> float:
    """SINR of user k under MRC with LMMSE channel estimates.

    Pilots of length tau are corrupted by the same aliased interferers
    that disturb the data phase, over unchanged interferer channels, so
    the result depends on the full interference profile through both its
    sum and its sum of squares: splitting a fixed total over more
    interferers strictly raises the SINR.
    """
    idx = _check_user_index(cfg, k)
    tau = _check_tau(cfg, tau)
    gamma = _check_gamma(gamma)
    return float(_sinr_icsi_all(cfg, tau, gamma, intf)[idx])


def term_powers_icsi(
    cfg: SystemConfig, tau: int, k: int, gamma: float, intf: InterferenceProfile
) -> TermPowers:
    """Exact mean powers of the five detector terms with LMMSE weights."""
    idx = _check_user_index(cfg, k)
    tau = _check_tau(cfg, tau)
    gamma = _check_gamma(gamma)
    betas = np.asarray(cfg.betas)
    S = intf.gamma_b
    lam = tau * gamma * betas[idx] + S + 1.0
    alpha = tau * gamma * betas[idx] ** 2 / lam
    es = gamma * (cfg.M * alpha) ** 2
    groups = _icsi_groups(cfg.M, tau, gamma, betas, S, intf.gamma_sq)
    d_sif, d_mui, d_bl, d_en = (float(g[idx]) for g in groups)
    return TermPowers(es, es * d_sif, es * d_mui, es * d_bl, es * d_en)


def sumrate_icsi(
    cfg: SystemConfig, tau: int, gamma: float, intf: InterferenceProfile
) -> float:
    """Achievable sum-rate in bpcu with LMMSE-based MRC at training length tau.

    Scales the per-user log terms by (1 - tau/N_u) to account for the
    channel uses spent on pilots.
    """
    tau = _check_tau(cfg, tau)
    gamma = _check_gamma(gamma)
    sinr = _sinr_icsi_all(cfg, tau, gamma, intf)
    return float((1.0 - tau / cfg.N_u) * np.sum(np.log1p(sinr)) / LN2)


def sumrate_icsi_opt(
    cfg: SystemConfig, gamma: float, intf: InterferenceProfile
) -> tuple[float, int]:
    """Sum-rate maximized over the training length.

    Scans every integer tau in [K, N_u - 1] exhaustively and returns the
    best rate together with the smallest maximizing tau.
    """
    gamma = _check_gamma(gamma)
    taus = np.arange(cfg.K, cfg.N_u, dtype=float)
    sinr = _sinr_icsi_all(cfg, taus[:, None], gamma, intf)
    rates = (1.0 - taus / cfg.N_u) * np.sum(np.log1p(sinr), axis=1) / LN2
    best = int(np.argmax(rates))  # argmax takes the first, hence smallest, tau on ties
    return float(rates[best]), int(taus[best])


def sumrate_sup(
    cfg: SystemConfig, scenario: Scenario, tau: int | None = None
) -> float:
    """Interference-free sum-rate supremum as gamma grows without bound.

    In both scenarios the per-user SINR saturates at M * beta_k /
    sum(beta_q) because the combining-gain fluctuation and the other
    users' symbols grow with the same power as the desired signal.  For
    imperfect CSI the supremum is computed per training length and
    maximized over tau when tau is omitted.  Used to validate that a rate
    target is reachable before solving for an operating point.
    """
    betas = np.asarray(cfg.betas)
    log_terms = np.sum(np.log1p(cfg.M * betas / cfg.beta_sum)) / LN2
    if scenario is Scenario.PERFECT_CSI:
        if tau is not None:
            raise ValueError("tau is not applicable with perfect CSI")
        return float(log_terms)
    if tau is None:
        taus = np.arange(cfg.K, cfg.N_u, dtype=float)
        return float(np.max((1.0 - taus / cfg.N_u) * log_terms))
    tau = _check_tau(cfg, tau)
    return float((1.0 - tau / cfg.N_u) * log_terms)


def sinr_icsi_limit(
    k: int, c: float, gamma_b: float, I: int, tau: int, betas: Sequence[float]
) -> float:
    """Large-M limit of the imperfect-CSI SINR along the critical scaling.

    Along gamma = c / sqrt(M) with total interference gamma_b = c_b /
    sqrt(M) split uniformly over I interferers, the SINR converges to
    tau * c^2 * beta_k^2 / (1 + c_b^2 / I).  The gamma_b argument is that
    finite limit c_b of sqrt(M) * gamma_b, not a finite-M total.
    """
    if c <= 0.0:
        raise ValueError("c must be positive")
    if I < 1:
        raise ValueError("interferer count I must be a positive integer")
    if gamma_b < 0.0:
        raise ValueError("the limiting interference constant must be non-negative")
    if not 1 <= k <= len(betas):
        raise ValueError(f"user index k={k} outside 1..{len(betas)}")
    beta_k = float(betas[k - 1])
    return tau * c * c * beta_k * beta_k / (1.0 + gamma_b * gamma_b / I)
