"""Brute-force link-level oracle for the closed-form SINRs.

Samples the received-signal model directly: draws channels, pilots,
interferer symbols and noise, runs LMMSE channel estimation and MRC
detection, and splits every detector output into the exact five terms
whose mean powers the closed forms in ``mimomar.core`` predict.  Nothing
here reuses the closed-form algebra beyond the deterministic mean
combining gain that defines the ES term, so agreement between the two
modules is a genuine two-sided check.

Determinism: every trial derives its own random substream from
(seed, trial index) alone, and per-term powers are accumulated into a
per-trial array that is reduced with pairwise summation, so results are
bit-identical for a given (seed, trials) regardless of execution order or
parallelism degree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import (
    InterferenceProfile,
    OperatingPoint,
    Scenario,
    SystemConfig,
)

__all__ = [
    "McScene",
    "DetectorTerms",
    "SinrBreakdown",
    "pilot_book",
    "generate_scene",
    "lmmse_estimate",
    "mrc_detect",
    "empirical_sinr",
]

_UINT64_MASK = (1 << 64) - 1


@dataclass(frozen=True)
class McScene:
    """One sampled realization of the uplink: channels, symbols, noise.

    The interferer channel matrix G is drawn once per scene and shared by
    the pilot and data phases; a scene spans a single coherence interval.
    Perfect-CSI scenes carry no pilot phase, so the pilot-side fields are
    None there.
    """

    H: np.ndarray                           # M x K user channels, column k CN(0, beta_k)
    G: np.ndarray                           # M x I interferer channels, entries CN(0, 1)
    Phi: np.ndarray | None                  # tau x K pilot book, orthonormal columns
    pilot_interference: np.ndarray | None   # tau x I symbols u_i[t], entries CN(0, gamma_i)
    pilot_noise: np.ndarray | None          # M x tau, entries CN(0, 1)
    data_symbols: np.ndarray                # K x T, entries CN(0, 1)
    data_interference: np.ndarray           # I x T, entries CN(0, gamma_i) per row
    data_noise: np.ndarray                  # M x T, entries CN(0, 1)
    seed: int


@dataclass(frozen=True)
class DetectorTerms:
    """Complex per-user, per-symbol detector terms; they sum to weights^H r."""

    es: np.ndarray   # K x T desired symbol at the mean combining gain
    sif: np.ndarray  # K x T combining-gain fluctuation
    mui: np.ndarray  # K x T other users' symbols and own-symbol estimation leakage
    bl: np.ndarray   # K x T beam-combined aliased interference
    en: np.ndarray   # K x T combined thermal noise

    def total(self) -> np.ndarray:
        return self.es + self.sif + self.mui + self.bl + self.en


@dataclass(frozen=True)
class SinrBreakdown:
    """Empirical mean powers of the detector terms for one user.

    sinr is es_power over the sum of the four noise-side powers, the same
    quotient the closed forms evaluate in expectation.  std_err maps each
    of "es", "sif", "mui", "bl", "en" and "sinr" to its standard error;
    the sinr entry comes from the delta method on the ratio of means.
    """

    es_power: float
    sif_power: float
    mui_power: float
    bl_power: float
    en_power: float
    sinr: float
    trials: int
    std_err: dict[str, float]


def _crandn(rng: np.random.Generator, shape: tuple[int, ...]) -> np.ndarray:
    # circularly-symmetric unit-variance complex Gaussian: two independent
    # real components at variance 1/2 each
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * math.sqrt(0.5)


@lru_cache(maxsize=64)
def pilot_book(tau: int, K: int) -> np.ndarray:
    """First K columns of the tau-point unitary DFT matrix.

    Exactly orthonormal in the transposed-conjugate sense used by the
    estimator: Phi^T Phi^* = I_K.  Any other orthonormal book gives
    statistically identical results; this one is closed-form and cheap.
    """
    if not 1 <= K <= tau:
        raise ValueError("pilot book needs K <= tau")
    t = np.arange(tau)
    book = np.exp(-2j * np.pi * np.outer(t, t[:K]) / tau) / np.sqrt(tau)
    book.flags.writeable = False
    return book


def generate_scene(
    cfg: SystemConfig,
    op_point: OperatingPoint,
    intf: InterferenceProfile,
    T: int,
    seed: int,
) -> McScene:
    """Draw one coherence interval of channels, symbols and noise.

    Deterministic given (arguments, seed); the draw order is fixed as
    H, G, pilot interference, pilot noise, data symbols, data
    interference, data noise.  Pilot-phase arrays exist only when
    op_point.tau is set; T is the number of data symbols.
    """
    if T < 1:
        raise ValueError("need at least one data symbol")
    tau = op_point.tau
    if tau is not None and not cfg.K <= tau <= cfg.N_u - 1:
        raise ValueError(f"tau={tau} outside [K, N_u - 1] = [{cfg.K}, {cfg.N_u - 1}]")
    seed = int(seed) & _UINT64_MASK
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    M, K, I = cfg.M, cfg.K, intf.count
    root_betas = np.sqrt(np.asarray(cfg.betas))
    root_gammas = np.sqrt(np.asarray(intf.gammas)) if I else np.zeros(0)

    H = _crandn(rng, (M, K)) * root_betas[None, :]
    G = _crandn(rng, (M, I))
    if tau is not None:
        Phi = pilot_book(tau, K)
        pilot_interference = _crandn(rng, (tau, I)) * root_gammas[None, :]
        pilot_noise = _crandn(rng, (M, tau))
    else:
        Phi = pilot_interference = pilot_noise = None
    data_symbols = _crandn(rng, (K, T))
    data_interference = _crandn(rng, (I, T)) * root_gammas[:, None]
    data_noise = _crandn(rng, (M, T))
    return McScene(
        H, G, Phi, pilot_interference, pilot_noise,
        data_symbols, data_interference, data_noise, seed,
    )


def lmmse_estimate(
    scene: McScene,
    cfg: SystemConfig,
    op_point: OperatingPoint,
    intf: InterferenceProfile,
) -> np.ndarray:
    """LMMSE channel estimates from the scene's pilot phase.

    Users send sqrt(tau * gamma)-scaled orthonormal pilots; the base
    station correlates the received pilot block with the book and applies
    the per-user LMMSE shrinkage diag entry
    (1/sqrt(tau gamma)) / (1 + (1 + gamma_b) / (tau gamma beta_k)).
    Returns the M x K estimate matrix.
    """
    if scene.Phi is None or op_point.tau is None:
        raise ValueError("scene has no pilot phase; cannot estimate")
    tau, gamma = op_point.tau, op_point.gamma
    M, K = scene.H.shape
    if (M, K) != (cfg.M, cfg.K) or scene.Phi.shape != (tau, K):
        raise ValueError("scene dimensions do not match the configuration")
    received = (
        math.sqrt(tau * gamma) * scene.H @ scene.Phi.T
        + scene.G @ scene.pilot_interference.T
        + scene.pilot_noise
    )
    betas = np.asarray(cfg.betas)
    shrink = (1.0 + (1.0 + intf.gamma_b) / (tau * gamma * betas)) ** -1
    d_tilde = shrink / math.sqrt(tau * gamma)
    return received @ scene.Phi.conj() * d_tilde[None, :]


def _mean_combining_gain(
    cfg: SystemConfig,
    op_point: OperatingPoint,
    intf: InterferenceProfile,
    scenario: Scenario,
) -> np.ndarray:
    betas = np.asarray(cfg.betas)
    if scenario is Scenario.PERFECT_CSI:
        return cfg.M * betas
    tau, gamma = op_point.tau, op_point.gamma
    return cfg.M * tau * gamma * betas**2 / (tau * gamma * betas + 1.0 + intf.gamma_b)


def mrc_detect(
    scene: McScene,
    weights: np.ndarray,
    cfg: SystemConfig,
    op_point: OperatingPoint,
    intf: InterferenceProfile,
    scenario: Scenario,
) -> DetectorTerms:
    """Split each user's matched-filter output into its five exact terms.

    weights must be the true channels for the perfect-CSI scenario and an
    LMMSE estimate for the imperfect-CSI scenario.  ES carries the
    analytically known mean combining gain (M beta_k with perfect CSI,
    M tau gamma beta_k^2 / (tau gamma beta_k + 1 + gamma_b) with
    estimates); SIF is the fluctuation of the realized gain around that
    mean; MUI collects the other users' symbols plus, with estimates, the
    leakage of the user's own symbol through the estimation error; BL and
    EN are the combined interference and noise.  The five terms sum to
    weights^H r exactly, symbol by symbol.
    """
    if weights.shape != scene.H.shape:
        raise ValueError("weights shape does not match the scene")
    if scenario is Scenario.PERFECT_CSI:
        if weights is not scene.H and not np.array_equal(weights, scene.H):
            raise ValueError("perfect-CSI detection requires the true channels as weights")
    elif op_point.tau is None:
        raise ValueError("imperfect-CSI detection requires a training length")
    gamma = op_point.gamma
    root_gamma = math.sqrt(gamma)

    received = (
        root_gamma * scene.H @ scene.data_symbols
        + scene.G @ scene.data_interference
        + scene.data_noise
    )
    cross = weights.conj().T @ scene.H                        # K x K, entry (k, q) = w_k^H h_q
    mean_gain = _mean_combining_gain(cfg, op_point, intf, scenario)
    if scenario is Scenario.PERFECT_CSI:
        # own-symbol coefficient is w_k^H h_k itself, taken from the same
        # matrix product as the MUI sum so their difference cancels exactly
        # (K = 1 leaves MUI identically zero, not just at roundoff level)
        own = np.diagonal(cross)
    else:
        # realized combining gain |w_k|^2; the residual w_k^H (h_k - w_k)
        # of the user's own symbol is estimation-error leakage and is
        # grouped with the multi-user term
        own = np.einsum("mk,mk->k", weights.conj(), weights).real

    x = scene.data_symbols
    es = root_gamma * mean_gain[:, None] * x
    sif = root_gamma * (own - mean_gain)[:, None] * x
    mui = root_gamma * (cross @ x - own[:, None] * x)
    bl = weights.conj().T @ (scene.G @ scene.data_interference)
    en = weights.conj().T @ scene.data_noise
    return DetectorTerms(es, sif, mui, bl, en)


def _scene_seed(seed: int, trial: int) -> int:
    # counter-based child stream: depends only on (seed, trial), never on
    # how trials are scheduled
    child = np.random.SeedSequence(entropy=[int(seed) & _UINT64_MASK, trial])
    return int(child.generate_state(1, np.uint64)[0])


def empirical_sinr(
    cfg: SystemConfig,
    op_point: OperatingPoint,
    intf: InterferenceProfile,
    scenario: Scenario,
    trials: int,
    seed: int,
) -> list[SinrBreakdown]:
    """Estimate per-user term powers and SINR from independent scenes.

    Each trial is a fresh coherence interval carrying exactly one data
    symbol, because the combining-gain fluctuation is constant within an
    interval and averaging several symbols from one interval would
    understate its variance.  Returns one SinrBreakdown per user.
    """
    if trials < 1:
        raise ValueError("need at least one trial")
    K = cfg.K
    powers = np.empty((trials, K, 5))
    for t in range(trials):
        scene = generate_scene(cfg, op_point, intf, 1, _scene_seed(seed, t))
        if scenario is Scenario.PERFECT_CSI:
            weights = scene.H
        else:
            weights = lmmse_estimate(scene, cfg, op_point, intf)
        terms = mrc_detect(scene, weights, cfg, op_point, intf, scenario)
        stacked = np.stack(
            (terms.es, terms.sif, terms.mui, terms.bl, terms.en), axis=-1
        )
        powers[t] = np.abs(stacked[:, 0, :]) ** 2

    names = ("es", "sif", "mui", "bl", "en")
    means = powers.mean(axis=0)
    if trials > 1:
        errs = powers.std(axis=0, ddof=1) / math.sqrt(trials)
    else:
        errs = np.zeros((K, 5))

    results = []
    for k in range(K):
        es_mean = means[k, 0]
        noise_trials = powers[:, k, 1:].sum(axis=1)
        noise_mean = noise_trials.mean()
        sinr = es_mean / noise_mean
        if trials > 1:
            es_trials = powers[:, k, 0]
            var_es = es_trials.var(ddof=1)
            var_noise = noise_trials.var(ddof=1)
            cov = float(np.cov(es_trials, noise_trials, ddof=1)[0, 1])
            # delta method for the ratio of the two sample means
            var_sinr = (
                var_es - 2.0 * sinr * cov + sinr * sinr * var_noise
            ) / (trials * noise_mean * noise_mean)
            sinr_err = math.sqrt(max(var_sinr, 0.0))
        else:
            sinr_err = 0.0
        std_err = {name: float(errs[k, j]) for j, name in enumerate(names)}
        std_err["sinr"] = sinr_err
        results.append(
            SinrBreakdown(
                es_power=float(means[k, 0]),
                sif_power=float(means[k, 1]),
                mui_power=float(means[k, 2]),
                bl_power=float(means[k, 3]),
                en_power=float(means[k, 4]),
                sinr=float(sinr),
                trials=trials,
                std_err=std_err,
            )
        )
    return results
