"""Required bandpass-filter attenuation for massive-MIMO uplinks.

Given sum-rate targets with and without aliased out-of-band interference,
this package solves for the transmit-SNR operating point, the maximum
allowable ratio of aliased interference to received in-band power (MAR),
and its large-antenna-count scaling constants, for maximum-ratio
combining with either perfect channel knowledge or LMMSE estimates from
interference-corrupted pilots.  A brute-force Monte-Carlo link simulation
independently verifies every closed form, and a CLI sweeps antenna
counts, rate relaxations and interferer counts into machine-readable
tables.
"""

from .core import (
    EMPTY_PROFILE,
    AsymptoticConstants,
    BpfModel,
    InterferenceProfile,
    MarResult,
    OperatingPoint,
    RateTarget,
    Scenario,
    SystemConfig,
    TermPowers,
    sinr_icsi,
    sinr_icsi_limit,
    sinr_pcsi,
    sumrate_icsi,
    sumrate_icsi_opt,
    sumrate_pcsi,
    sumrate_sup,
    term_powers_icsi,
    term_powers_pcsi,
)
from .solvers import (
    BracketError,
    ConvergenceError,
    InfeasibleRateError,
    SolverError,
    SolverSettings,
    asymptotic_icsi,
    asymptotic_pcsi,
    mar,
    solve_gamma,
    solve_gamma_b,
)
from .montecarlo import (
    DetectorTerms,
    McScene,
    SinrBreakdown,
    empirical_sinr,
    generate_scene,
    lmmse_estimate,
    mrc_detect,
    pilot_book,
)
from .cli import (
    CSV_HEADER,
    DEFAULT_M_GRID,
    SweepFailure,
    SweepRow,
    SweepSpec,
    ValidationReport,
    attenuation_budget,
    main,
    read_rows_csv,
    read_rows_json,
    render_csv,
    render_json,
    run_sweep,
    validate,
)

__version__ = "1.0.0"

__all__ = [
    "__version__",
    # core types
    "Scenario",
    "SystemConfig",
    "InterferenceProfile",
    "EMPTY_PROFILE",
    "OperatingPoint",
    "BpfModel",
    "RateTarget",
    "MarResult",
    "AsymptoticConstants",
    "TermPowers",
    # closed forms
    "sinr_pcsi",
    "sumrate_pcsi",
    "term_powers_pcsi",
    "sinr_icsi",
    "sumrate_icsi",
    "sumrate_icsi_opt",
    "sumrate_sup",
    "sinr_icsi_limit",
    "term_powers_icsi",
    # solvers
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
    # Monte-Carlo oracle
    "McScene",
    "DetectorTerms",
    "SinrBreakdown",
    "pilot_book",
    "generate_scene",
    "lmmse_estimate",
    "mrc_detect",
    "empirical_sinr",
    # batch front end
    "SweepSpec",
    "SweepRow",
    "SweepFailure",
    "ValidationReport",
    "run_sweep",
    "validate",
    "attenuation_budget",
    "render_csv",
    "render_json",
    "read_rows_csv",
    "read_rows_json",
    "CSV_HEADER",
    "DEFAULT_M_GRID",
    "main",
]
