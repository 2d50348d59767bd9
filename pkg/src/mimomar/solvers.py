"""Inverse problems on the closed-form rates: operating points, maximum
allowable interference, and large-M constants.

Everything is bisection on a bracket whose monotonicity is verified at the
endpoints before iterating; the rate expressions are smooth and strictly
monotone in the solved variable over the brackets used, so bisection is
slower than a derivative method but immune to the unwieldy derivatives of
the imperfect-CSI SINR.  All solves are pure functions: identical inputs
give bit-identical outputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .core import (
    EMPTY_PROFILE,
    AsymptoticConstants,
    InterferenceProfile,
    MarResult,
    RateTarget,
    Scenario,
    SystemConfig,
    sumrate_icsi,
    sumrate_icsi_opt,
    sumrate_pcsi,
    sumrate_sup,
)

__all__ = [
    "SolverSettings",
    "SolverError",
    "InfeasibleRateError",
    "BracketError",
    "ConvergenceError",
    "solve_gamma",
    "solve_gamma_b",
    "mar",
    "asymptotic_pcsi",
    "asymptotic_icsi",
]

# a rate target must stay this fraction below the supremum so the gamma
# bracket stays finite
FEASIBILITY_MARGIN = 1e-6

# expanding upper bracket for the interference solve stops here
GAMMA_B_BRACKET_CAP = 1e12


class SolverError(Exception):
    """Base class for solver failures."""


class InfeasibleRateError(SolverError):
    """The requested rate is at or above the attainable supremum."""


class BracketError(SolverError):
    """No sign change inside the search bracket."""


class ConvergenceError(SolverError):
    """Bisection exhausted its iteration budget before meeting rate_tol."""


@dataclass(frozen=True)
class SolverSettings:
    """Tolerances and brackets shared by the rate-inversion solvers."""

    rate_tol: float = 1e-10     # bpcu, absolute
    bracket_lo: float = 1e-12   # linear gamma
    bracket_hi: float = 1e6     # linear gamma
    max_iter: int = 200

    def __post_init__(self) -> None:
        if self.rate_tol <= 0.0:
            raise ValueError("rate_tol must be positive")
        if not 0.0 < self.bracket_lo < self.bracket_hi:
            raise ValueError("brackets must satisfy 0 < bracket_lo < bracket_hi")
        if self.max_iter < 1:
            raise ValueError("max_iter must be positive")


def _bisect(
    rate_fn: Callable[[float], float],
    target: float,
    lo: float,
    hi: float,
    settings: SolverSettings,
    increasing: bool,
) -> float:
    """Find x in [lo, hi] with |rate_fn(x) - target| <= rate_tol.

    The caller guarantees rate_fn is monotone with the stated direction
    and that the target is bracketed.
    """
    for _ in range(settings.max_iter):
        mid = 0.5 * (lo + hi)
        rate = rate_fn(mid)
        if abs(rate - target) <= settings.rate_tol:
            return mid
        if (rate < target) == increasing:
            lo = mid
        else:
            hi = mid
    raise ConvergenceError(
        f"no convergence to rate_tol={settings.rate_tol} in {settings.max_iter} iterations"
    )


def _interference_free_rate(
    cfg: SystemConfig, scenario: Scenario
) -> Callable[[float], float]:
    if scenario is Scenario.PERFECT_CSI:
        return lambda g: sumrate_pcsi(cfg, g, EMPTY_PROFILE)
    return lambda g: sumrate_icsi_opt(cfg, g, EMPTY_PROFILE)[0]


def solve_gamma(
    cfg: SystemConfig,
    scenario: Scenario,
    R: float,
    settings: SolverSettings = SolverSettings(),
) -> tuple[float, int | None]:
    """Transmit SNR gamma_star at which the interference-free sum-rate is R.

    For imperfect CSI the rate is re-maximized over the training length at
    every bisection probe, and the tau attained at the solution is
    returned; perfect CSI returns None for tau.
    """
    if R <= 0.0:
        raise InfeasibleRateError("rate target must be positive")
    sup = sumrate_sup(cfg, scenario)
    if R > (1.0 - FEASIBILITY_MARGIN) * sup:
        raise InfeasibleRateError(
            f"R={R} is not strictly below the supremum rate {sup:.6f}"
        )
    rate_fn = _interference_free_rate(cfg, scenario)
    rate_lo = rate_fn(settings.bracket_lo)
    rate_hi = rate_fn(settings.bracket_hi)
    if rate_lo >= rate_hi:
        raise BracketError("rate is not increasing across the gamma bracket")
    if rate_hi < R:
        raise BracketError(
            f"rate at bracket_hi={settings.bracket_hi} is {rate_hi:.6f}, below R={R}"
        )
    if rate_lo > R:
        raise BracketError(
            f"rate at bracket_lo={settings.bracket_lo} is {rate_lo:.6f}, above R={R}"
        )
    gamma_star = _bisect(rate_fn, R, settings.bracket_lo, settings.bracket_hi, settings, True)
    if scenario is Scenario.PERFECT_CSI:
        return gamma_star, None
    return gamma_star, sumrate_icsi_opt(cfg, gamma_star, EMPTY_PROFILE)[1]


def _solve_gamma_b_at(
    cfg: SystemConfig,
    scenario: Scenario,
    target: RateTarget,
    I: int,
    gamma_star: float,
    tau_star: int | None,
    settings: SolverSettings,
    reopt_tau: bool,
) -> float:
    """Interference solve given an already-solved gamma_star.

    The total interference is split uniformly over the I interferers,
    which is the least damaging split at a fixed total, so the returned
    gamma_b is the maximum total compatible with the degraded target.  By
    default tau stays frozen at the interference-free optimum: the frame
    is provisioned before the interference is known.  reopt_tau instead
    re-optimizes tau at every probe for sensitivity studies.
    """
    if I < 1:
        raise ValueError("interferer count I must be a positive integer")
    assert target.R_prime is not None

    def rate_at(gamma_b: float) -> float:
        profile = InterferenceProfile.uniform(gamma_b, I)
        if scenario is Scenario.PERFECT_CSI:
            return sumrate_pcsi(cfg, gamma_star, profile)
        if reopt_tau:
            return sumrate_icsi_opt(cfg, gamma_star, profile)[0]
        assert tau_star is not None
        return sumrate_icsi(cfg, tau_star, gamma_star, profile)

    hi = 1.0
    while rate_at(hi) > target.R_prime:
        hi *= 2.0
        if hi > GAMMA_B_BRACKET_CAP:
            raise BracketError(
                f"rate stays above R_prime={target.R_prime} up to gamma_b={GAMMA_B_BRACKET_CAP}"
            )
    return _bisect(rate_at, target.R_prime, 0.0, hi, settings, increasing=False)


def solve_gamma_b(
    cfg: SystemConfig,
    scenario: Scenario,
    target: RateTarget,
    I: int,
    settings: SolverSettings = SolverSettings(),
    reopt_tau: bool = False,
) -> float:
    """Maximum total aliased interference SNR that still permits R_prime.

    Solves for the uniform-split total gamma_b at which the sum-rate,
    evaluated at the interference-free operating point gamma_star(R),
    drops to R_prime.
    """
    gamma_star, tau_star = solve_gamma(cfg, scenario, target.R, settings)
    return _solve_gamma_b_at(
        cfg, scenario, target, I, gamma_star, tau_star, settings, reopt_tau
    )


def mar(
    cfg: SystemConfig,
    scenario: Scenario,
    target: RateTarget,
    I: int,
    settings: SolverSettings = SolverSettings(),
    reopt_tau: bool = False,
) -> MarResult:
    """Maximum allowable ratio of aliased interference to received in-band power.

    Packages gamma_star(R), the uniform-split maximum gamma_b(R, R_prime),
    and their ratio r_b = gamma_b / (1 + gamma_star * sum(beta_q)), the
    quantity a bandpass-filter designer must keep the aliased interference
    below.
    """
    gamma_star, tau_star = solve_gamma(cfg, scenario, target.R, settings)
    gamma_b = _solve_gamma_b_at(
        cfg, scenario, target, I, gamma_star, tau_star, settings, reopt_tau
    )
    return MarResult.from_solution(scenario, gamma_star, gamma_b, tau_star, cfg.beta_sum)


# ---------------------------------------------------------------------------
# large-M constants
# ---------------------------------------------------------------------------


def _expand_and_bisect(
    rate_fn: Callable[[float], float],
    target: float,
    settings: SolverSettings,
    increasing: bool,
) -> float:
    """Bisect after growing an upper bracket from 1 by doubling."""
    hi = 1.0
    while (rate_fn(hi) < target) == increasing:
        hi *= 2.0
        if hi > GAMMA_B_BRACKET_CAP:
            raise BracketError("no bracket found while expanding upward")
    return _bisect(rate_fn, target, 0.0, hi, settings, increasing)


def asymptotic_pcsi(
    betas: tuple[float, ...] | list[float],
    K: int,
    R: float,
    R_prime: float,
    settings: SolverSettings = SolverSettings(),
) -> AsymptoticConstants:
    """Limits of M * gamma_star and of the MAR for perfect CSI.

    As M grows, M * gamma_star(R) tends to the constant c solving
    sum_k log2(1 + beta_k c) = R, and both gamma_b(R, R_prime) and the MAR
    itself tend to the constant c_prime solving
    sum_k log2(1 + beta_k c / (1 + c_prime)) = R_prime.
    """
    if len(betas) != K:
        raise ValueError("betas must have exactly K entries")
    if not 0.0 < R_prime < R:
        raise InfeasibleRateError("targets must satisfy 0 < R_prime < R")
    bs = [float(b) for b in betas]

    def clean_rate(c: float) -> float:
        return math.fsum(math.log1p(b * c) for b in bs) / math.log(2.0)

    c = _expand_and_bisect(clean_rate, R, settings, increasing=True)

    def degraded_rate(c_prime: float) -> float:
        return math.fsum(math.log1p(b * c / (1.0 + c_prime)) for b in bs) / math.log(2.0)

    c_prime = _expand_and_bisect(degraded_rate, R_prime, settings, increasing=False)
    return AsymptoticConstants(Scenario.PERFECT_CSI, c, c_prime, None)


def asymptotic_icsi(
    betas: tuple[float, ...] | list[float],
    K: int,
    N_u: int,
    R: float,
    R_prime: float,
    I: int,
    settings: SolverSettings = SolverSettings(),
) -> AsymptoticConstants:
    """Limits of sqrt(M) * gamma_star and sqrt(M) * r_b for imperfect CSI.

    Along the critical scaling gamma = c / sqrt(M) the rate at training
    length tau tends to (1 - tau/N_u) * sum_k log2(1 + tau c^2 beta_k^2);
    c(tau) is solved per tau and the scan keeps the tau needing the
    smallest c, which is the training length the finite-M solver settles
    on for large M (ties go to the smaller tau).  The interference
    constant c_b then solves the degraded-rate equation at that tau with
    the uniform I-way split, and equals the limit of sqrt(M) * gamma_b and
    of sqrt(M) * r_b alike.
    """
    if len(betas) != K:
        raise ValueError("betas must have exactly K entries")
    if not 0.0 < R_prime < R:
        raise InfeasibleRateError("targets must satisfy 0 < R_prime < R")
    if I < 1:
        raise ValueError("interferer count I must be a positive integer")
    bs = [float(b) for b in betas]

    def rate_at(tau: int, c: float, boost: float) -> float:
        prefactor = 1.0 - tau / N_u
        return prefactor * math.fsum(
            math.log1p(tau * c * c * b * b / boost) for b in bs
        ) / math.log(2.0)

    best_c, best_tau = math.inf, None
    for tau in range(K, N_u):
        try:
            c_tau = _expand_and_bisect(
                lambda c, t=tau: rate_at(t, c, 1.0), R, settings, increasing=True
            )
        except BracketError:
            # a tau whose overhead prefactor demands c beyond the bracket
            # cap cannot be the c-minimizing training length
            continue
        if c_tau < best_c:
            best_c, best_tau = c_tau, tau
    if best_tau is None:
        raise InfeasibleRateError(
            f"R={R} is unreachable along the critical scaling for every tau"
        )

    def degraded_rate(c_b: float) -> float:
        return rate_at(best_tau, best_c, 1.0 + c_b * c_b / I)

    c_b = _expand_and_bisect(degraded_rate, R_prime, settings, increasing=False)
    return AsymptoticConstants(Scenario.IMPERFECT_CSI, best_c, c_b, best_tau)
