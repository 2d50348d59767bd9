"""Batch front end: M-sweeps, MAR tables, attenuation budgets, validation.

Runs the solvers over a grid of antenna counts, rate targets and
interferer counts and emits one machine-readable row per combination, so
the interference-tolerance curves can be plotted straight from the output
(r_b_db against log2(M)).  A validation verb replays selected sweep
points through the Monte-Carlo oracle and reports closed-form versus
empirical SINR deltas.  Specs come from a flat key-value config file plus
command-line overrides; outputs are deterministic, so re-running a spec
with the same seed reproduces the output byte for byte.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import warnings
from dataclasses import dataclass, replace
from typing import Sequence

import numpy as np

from .core import (
    EMPTY_PROFILE,
    InterferenceProfile,
    OperatingPoint,
    RateTarget,
    Scenario,
    SystemConfig,
    sinr_icsi,
    sinr_pcsi,
)
from .montecarlo import empirical_sinr
from .solvers import SolverError, SolverSettings, mar, solve_gamma

__all__ = [
    "CSV_HEADER",
    "DEFAULT_M_GRID",
    "SweepSpec",
    "SweepRow",
    "SweepFailure",
    "ValidationReport",
    "run_sweep",
    "attenuation_budget",
    "validate",
    "render_csv",
    "render_json",
    "read_rows_csv",
    "read_rows_json",
    "parse_config_text",
    "spec_from_config_text",
    "main",
]

CSV_HEADER = "M,scenario,R,R_prime,I,gamma_star_db,gamma_b_db,tau_star,r_b_db,sqrtM_rb"

DEFAULT_M_GRID = (10, 20, 40, 80, 160, 320, 640, 1280)

_UINT64_MASK = (1 << 64) - 1


def _db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SweepSpec:
    """Everything a sweep, MAR table or validation run needs.

    Defaults reproduce the reference operating regime: K=10 users over an
    N_u=100 uplink slot, unit gains, R=10 bpcu relaxed to R_prime=9 under
    I=2 interferers, swept over a geometric antenna grid.  betas=None
    means equal unit gains; N_c=None means the coherence interval equals
    the uplink slot.  trials=0 lets validation fall back to its default
    trial count.
    """

    scenarios: tuple[Scenario, ...] = (Scenario.IMPERFECT_CSI, Scenario.PERFECT_CSI)
    m_list: tuple[int, ...] = DEFAULT_M_GRID
    K: int = 10
    N_u: int = 100
    N_c: int | None = None
    betas: tuple[float, ...] | None = None
    R: float = 10.0
    r_prime_list: tuple[float, ...] = (9.0,)
    i_list: tuple[int, ...] = (2,)
    trials: int = 0
    seed: int = 0
    out: str | None = None
    fmt: str = "csv"
    reopt_tau: bool = False
    validate_max_m: int = 128

    def __post_init__(self) -> None:
        object.__setattr__(self, "scenarios", tuple(self.scenarios))
        object.__setattr__(self, "m_list", tuple(int(m) for m in self.m_list))
        object.__setattr__(self, "r_prime_list", tuple(float(r) for r in self.r_prime_list))
        object.__setattr__(self, "i_list", tuple(int(i) for i in self.i_list))
        if not self.scenarios:
            raise ValueError("at least one scenario is required")
        if not self.m_list or not self.r_prime_list or not self.i_list:
            raise ValueError("m_list, r_prime_list and i_list must be non-empty")
        if self.betas is None:
            object.__setattr__(self, "betas", (1.0,) * self.K)
        else:
            object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if any(i < 0 for i in self.i_list):
            raise ValueError("interferer counts must be non-negative")
        if self.trials < 0:
            raise ValueError("trials must be non-negative")
        if self.fmt not in ("csv", "json"):
            raise ValueError("format must be 'csv' or 'json'")
        if self.validate_max_m < 1:
            raise ValueError("validate_max_m must be positive")
        # constructing one config and all rate targets surfaces invariant
        # violations at spec build time rather than mid-sweep
        self.config_for(self.m_list[0])
        for r_prime in self.r_prime_list:
            RateTarget(self.R, R_prime=r_prime)

    def config_for(self, M: int) -> SystemConfig:
        n_c = self.N_u if self.N_c is None else self.N_c
        assert self.betas is not None
        return SystemConfig(M=M, K=self.K, N_u=self.N_u, N_c=n_c, betas=self.betas)


@dataclass(frozen=True)
class SweepRow:
    """One solved sweep point; the fields are exactly the output columns."""

    M: int
    scenario: Scenario
    R: float
    R_prime: float
    I: int
    gamma_star_db: float
    gamma_b_db: float
    tau_star: int | None
    r_b_db: float
    sqrtM_rb: float

    @property
    def gamma_star(self) -> float:
        return 10.0 ** (self.gamma_star_db / 10.0)

    @property
    def gamma_b_star(self) -> float:
        return 10.0 ** (self.gamma_b_db / 10.0)

    @property
    def r_b_linear(self) -> float:
        return 10.0 ** (self.r_b_db / 10.0)

    def sort_key(self) -> tuple:
        return (self.scenario.value, self.R_prime, self.I, self.M)


@dataclass(frozen=True)
class SweepFailure:
    """A sweep combination whose solve failed; the sweep continued past it."""

    M: int
    scenario: Scenario
    R: float
    R_prime: float
    I: int
    message: str

    def line(self) -> str:
        return (
            f"FAILED scenario={self.scenario.value} M={self.M} R={self.R!r} "
            f"R_prime={self.R_prime!r} I={self.I}: {self.message}"
        )

    def sort_key(self) -> tuple:
        return (self.scenario.value, self.R_prime, self.I, self.M)


@dataclass(frozen=True)
class ValidationReport:
    """Per-checkpoint pass/fail lines from a Monte-Carlo validation run."""

    lines: tuple[str, ...]
    passed: int
    failed: int

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def text(self) -> str:
        summary = f"summary passed={self.passed} failed={self.failed}"
        return "\n".join(self.lines + (summary,)) + "\n"


def run_sweep(spec: SweepSpec) -> tuple[list[SweepRow], list[SweepFailure]]:
    """Solve the MAR at every (scenario, R_prime, I, M) combination.

    Returns the solved rows sorted by (scenario, R_prime, I, M) together
    with the failure records for combinations whose solve raised; a
    failing combination never aborts the rest of the sweep.
    """
    settings = SolverSettings()
    rows: list[SweepRow] = []
    failures: list[SweepFailure] = []
    for scenario in spec.scenarios:
        for r_prime in spec.r_prime_list:
            target = RateTarget(spec.R, R_prime=r_prime)
            for i_count in spec.i_list:
                for m_value in spec.m_list:
                    try:
                        cfg = spec.config_for(m_value)
                        result = mar(
                            cfg, scenario, target, i_count, settings, spec.reopt_tau
                        )
                    except (SolverError, ValueError) as exc:
                        failures.append(
                            SweepFailure(
                                m_value, scenario, spec.R, r_prime, i_count, str(exc)
                            )
                        )
                        continue
                    rows.append(
                        SweepRow(
                            M=m_value,
                            scenario=scenario,
                            R=spec.R,
                            R_prime=float(target.R_prime),
                            I=i_count,
                            gamma_star_db=_db(result.gamma_star),
                            gamma_b_db=_db(result.gamma_b_star),
                            tau_star=result.tau_star,
                            r_b_db=result.r_b_db,
                            sqrtM_rb=math.sqrt(m_value) * result.r_b_linear,
                        )
                    )
    rows.sort(key=SweepRow.sort_key)
    failures.sort(key=SweepFailure.sort_key)
    return rows, failures


def attenuation_budget(mar_db: float, excess_interference_db: float) -> float:
    """Required out-of-band filter attenuation in dB.

    An interferer arriving excess_interference_db above the useful in-band
    power must be pushed down to the maximum allowable ratio, so the
    filter needs that excess plus the magnitude of the (normally negative)
    MAR.
    """
    if mar_db > 0.0:
        warnings.warn(
            "mar_db is positive; the allowable interference already exceeds "
            "the in-band power, so no attenuation is strictly required",
            stacklevel=2,
        )
    return excess_interference_db + abs(mar_db)


# ---------------------------------------------------------------------------
# Monte-Carlo validation
# ---------------------------------------------------------------------------

VALIDATE_DEFAULT_TRIALS = 100_000

# closed-form vs empirical SINRs must agree within max of this relative
# tolerance and 4 standard errors of the empirical estimate
VALIDATE_REL_TOL = 0.02


def _point_seed(seed: int, ordinal: int) -> int:
    child = np.random.SeedSequence(entropy=[int(seed) & _UINT64_MASK, ordinal])
    return int(child.generate_state(1, np.uint64)[0])


def validate(spec: SweepSpec, closed_form_scale: float = 1.0) -> ValidationReport:
    """Replay sweep points through the Monte-Carlo oracle.

    Every sweep combination with M <= spec.validate_max_m is solved, then
    simulated at its solved operating point; each user's closed-form SINR
    must match the empirical one within max(2%, 4 standard errors).
    Combinations with I = 0 are checked at the interference-free operating
    point instead, where the empirical aliased-interference power must be
    exactly zero.  closed_form_scale deliberately miscalibrates the
    closed form and exists so the report's ability to fail can itself be
    tested; leave it at 1.0 for real validation.
    """
    settings = SolverSettings()
    trials = spec.trials if spec.trials > 0 else VALIDATE_DEFAULT_TRIALS
    lines: list[str] = []
    passed = failed = 0
    ordinal = 0
    for scenario in spec.scenarios:
        for r_prime in spec.r_prime_list:
            target = RateTarget(spec.R, R_prime=r_prime)
            for i_count in spec.i_list:
                for m_value in spec.m_list:
                    if m_value > spec.validate_max_m:
                        continue
                    point = (
                        f"scenario={scenario.value} M={m_value} "
                        f"R_prime={target.R_prime!r} I={i_count}"
                    )
                    try:
                        cfg = spec.config_for(m_value)
                        if i_count >= 1:
                            result = mar(
                                cfg, scenario, target, i_count, settings, spec.reopt_tau
                            )
                            op = OperatingPoint(result.gamma_star, result.tau_star)
                            profile = InterferenceProfile.uniform(
                                result.gamma_b_star, i_count
                            )
                        else:
                            gamma_star, tau_star = solve_gamma(
                                cfg, scenario, spec.R, settings
                            )
                            op = OperatingPoint(gamma_star, tau_star)
                            profile = EMPTY_PROFILE
                    except (SolverError, ValueError) as exc:
                        lines.append(f"FAIL solve {point}: {exc}")
                        failed += 1
                        ordinal += 1
                        continue
                    breakdowns = empirical_sinr(
                        cfg, op, profile, scenario, trials, _point_seed(spec.seed, ordinal)
                    )
                    ordinal += 1
                    for k in range(1, cfg.K + 1):
                        if scenario is Scenario.PERFECT_CSI:
                            closed = sinr_pcsi(cfg, k, op.gamma, profile)
                        else:
                            assert op.tau is not None
                            closed = sinr_icsi(cfg, op.tau, k, op.gamma, profile)
                        closed *= closed_form_scale
                        emp = breakdowns[k - 1]
                        tol = max(
                            VALIDATE_REL_TOL * emp.sinr, 4.0 * emp.std_err["sinr"]
                        )
                        delta = abs(closed - emp.sinr)
                        ok = delta <= tol
                        passed, failed = passed + ok, failed + (not ok)
                        lines.append(
                            f"{'PASS' if ok else 'FAIL'} sinr {point} user={k} "
                            f"closed_form={closed:.6g} empirical={emp.sinr:.6g} "
                            f"delta={delta:.3g} tol={tol:.3g} trials={trials}"
                        )
                    if i_count == 0:
                        bl_total = math.fsum(b.bl_power for b in breakdowns)
                        ok = bl_total == 0.0
                        passed, failed = passed + ok, failed + (not ok)
                        lines.append(
                            f"{'PASS' if ok else 'FAIL'} bl_zero {point} "
                            f"bl_power={bl_total!r}"
                        )
    return ValidationReport(tuple(lines), passed, failed)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _row_cells(row: SweepRow) -> list[str]:
    return [
        str(row.M),
        row.scenario.value,
        repr(row.R),
        repr(row.R_prime),
        str(row.I),
        repr(row.gamma_star_db),
        repr(row.gamma_b_db),
        "n/a" if row.tau_star is None else str(row.tau_star),
        repr(row.r_b_db),
        repr(row.sqrtM_rb),
    ]


def render_csv(rows: Sequence[SweepRow]) -> str:
    # repr() floats round-trip exactly, so parsing the file reproduces the
    # row list bit for bit
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for row in rows:
        writer.writerow(_row_cells(row))
    return buf.getvalue()


def render_json(rows: Sequence[SweepRow]) -> str:
    payload = [
        {
            "M": row.M,
            "scenario": row.scenario.value,
            "R": row.R,
            "R_prime": row.R_prime,
            "I": row.I,
            "gamma_star_db": row.gamma_star_db,
            "gamma_b_db": row.gamma_b_db,
            "tau_star": row.tau_star,
            "r_b_db": row.r_b_db,
            "sqrtM_rb": row.sqrtM_rb,
        }
        for row in rows
    ]
    return json.dumps(payload, indent=2) + "\n"


def _row_from_strings(cells: Sequence[str]) -> SweepRow:
    if len(cells) != 10:
        raise ValueError(f"expected 10 columns, got {len(cells)}")
    return SweepRow(
        M=int(cells[0]),
        scenario=Scenario.parse(cells[1]),
        R=float(cells[2]),
        R_prime=float(cells[3]),
        I=int(cells[4]),
        gamma_star_db=float(cells[5]),
        gamma_b_db=float(cells[6]),
        tau_star=None if cells[7] == "n/a" else int(cells[7]),
        r_b_db=float(cells[8]),
        sqrtM_rb=float(cells[9]),
    )


def read_rows_csv(path: str) -> list[SweepRow]:
    """Parse a sweep CSV back into the exact row list that produced it."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader, None)
        if header != CSV_HEADER.split(","):
            raise ValueError(f"unexpected CSV header {header!r}")
        return [_row_from_strings(cells) for cells in reader]


def read_rows_json(path: str) -> list[SweepRow]:
    with open(path) as handle:
        payload = json.load(handle)
    return [
        SweepRow(
            M=entry["M"],
            scenario=Scenario.parse(entry["scenario"]),
            R=entry["R"],
            R_prime=entry["R_prime"],
            I=entry["I"],
            gamma_star_db=entry["gamma_star_db"],
            gamma_b_db=entry["gamma_b_db"],
            tau_star=entry["tau_star"],
            r_b_db=entry["r_b_db"],
            sqrtM_rb=entry["sqrtM_rb"],
        )
        for entry in payload
    ]


# ---------------------------------------------------------------------------
# config files
# ---------------------------------------------------------------------------

_CONFIG_KEYS = frozenset(
    {
        "scenario",
        "scenarios",
        "m_list",
        "k",
        "n_u",
        "n_c",
        "betas",
        "r",
        "r_prime_list",
        "fractional_loss_list",
        "i_list",
        "trials",
        "seed",
        "out",
        "format",
        "reopt_tau",
        "validate_max_m",
    }
)


def parse_config_text(text: str) -> dict[str, str]:
    """Flat key = value lines; '#' starts a comment; lists are comma-separated."""
    entries: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"config line {lineno} is not 'key = value': {raw!r}")
        key, _, value = line.partition("=")
        key = key.strip().lower()
        if key not in _CONFIG_KEYS:
            raise ValueError(f"unknown config key {key!r} on line {lineno}")
        entries[key] = value.strip()
    return entries


def _split_list(value: str) -> list[str]:
    items = [item.strip() for item in value.split(",")]
    return [item for item in items if item]


def _parse_betas(value: str, K: int) -> tuple[float, ...]:
    if value.startswith("equal:"):
        return (float(value.partition(":")[2]),) * K
    return tuple(float(item) for item in _split_list(value))


def _parse_bool(value: str) -> bool:
    lowered = value.lower()
    if lowered in ("true", "yes", "1", "on"):
        return True
    if lowered in ("false", "no", "0", "off"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def spec_from_config_text(text: str) -> SweepSpec:
    entries = parse_config_text(text)
    if "scenario" in entries and "scenarios" in entries:
        raise ValueError("give either 'scenario' or 'scenarios', not both")
    kwargs: dict = {}
    scenario_value = entries.get("scenarios", entries.get("scenario"))
    if scenario_value is not None:
        kwargs["scenarios"] = tuple(
            Scenario.parse(tok) for tok in _split_list(scenario_value)
        )
    if "m_list" in entries:
        kwargs["m_list"] = tuple(int(tok) for tok in _split_list(entries["m_list"]))
    if "k" in entries:
        kwargs["K"] = int(entries["k"])
    if "n_u" in entries:
        kwargs["N_u"] = int(entries["n_u"])
    if "n_c" in entries:
        kwargs["N_c"] = int(entries["n_c"])
    if "r" in entries:
        kwargs["R"] = float(entries["r"])
    R = kwargs.get("R", SweepSpec.R)
    if "r_prime_list" in entries and "fractional_loss_list" in entries:
        raise ValueError("give either 'r_prime_list' or 'fractional_loss_list', not both")
    if "r_prime_list" in entries:
        kwargs["r_prime_list"] = tuple(
            float(tok) for tok in _split_list(entries["r_prime_list"])
        )
    elif "fractional_loss_list" in entries:
        kwargs["r_prime_list"] = tuple(
            (1.0 - float(tok)) * R for tok in _split_list(entries["fractional_loss_list"])
        )
    if "i_list" in entries:
        kwargs["i_list"] = tuple(int(tok) for tok in _split_list(entries["i_list"]))
    if "betas" in entries:
        K = kwargs.get("K", SweepSpec.K)
        kwargs["betas"] = _parse_betas(entries["betas"], K)
    if "trials" in entries:
        kwargs["trials"] = int(entries["trials"])
    if "seed" in entries:
        kwargs["seed"] = int(entries["seed"])
    if "out" in entries:
        kwargs["out"] = entries["out"]
    if "format" in entries:
        kwargs["fmt"] = entries["format"]
    if "reopt_tau" in entries:
        kwargs["reopt_tau"] = _parse_bool(entries["reopt_tau"])
    if "validate_max_m" in entries:
        kwargs["validate_max_m"] = int(entries["validate_max_m"])
    return SweepSpec(**kwargs)


# ---------------------------------------------------------------------------
# command line
# ---------------------------------------------------------------------------


def _spec_from_args(args: argparse.Namespace) -> SweepSpec:
    if args.config is not None:
        with open(args.config) as handle:
            spec = spec_from_config_text(handle.read())
    else:
        spec = SweepSpec()
    overrides: dict = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.out is not None:
        overrides["out"] = args.out
    if args.format is not None:
        overrides["fmt"] = args.format
    if args.reopt_tau:
        overrides["reopt_tau"] = True
    if getattr(args, "trials", None) is not None:
        overrides["trials"] = args.trials
    if getattr(args, "max_m", None) is not None:
        overrides["validate_max_m"] = args.max_m
    return replace(spec, **overrides) if overrides else spec


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as handle:
            handle.write(text)


def _report_failures(failures: Sequence[SweepFailure]) -> None:
    for failure in failures:
        print(failure.line(), file=sys.stderr)


def _cmd_sweep(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    rows, failures = run_sweep(spec)
    text = render_csv(rows) if spec.fmt == "csv" else render_json(rows)
    _emit(text, spec.out)
    _report_failures(failures)
    return 1 if failures else 0


def _cmd_mar(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    rows, failures = run_sweep(spec)
    lines = []
    for row in rows:
        tau = "n/a" if row.tau_star is None else str(row.tau_star)
        lines.append(
            f"scenario={row.scenario.value} M={row.M} R={row.R!r} "
            f"R_prime={row.R_prime!r} I={row.I} "
            f"gamma_star={row.gamma_star:.10g} gamma_star_db={row.gamma_star_db:.6f} "
            f"gamma_b={row.gamma_b_star:.10g} gamma_b_db={row.gamma_b_db:.6f} "
            f"tau_star={tau} r_b_db={row.r_b_db:.6f} sqrtM_rb={row.sqrtM_rb:.10g}"
        )
    _emit("".join(line + "\n" for line in lines), spec.out)
    _report_failures(failures)
    return 1 if failures else 0


def _cmd_solve(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    settings = SolverSettings()
    lines = []
    failed = False
    for scenario in spec.scenarios:
        for m_value in spec.m_list:
            prefix = f"scenario={scenario.value} M={m_value} R={spec.R!r}"
            try:
                gamma_star, tau_star = solve_gamma(
                    spec.config_for(m_value), scenario, spec.R, settings
                )
            except (SolverError, ValueError) as exc:
                print(f"FAILED {prefix}: {exc}", file=sys.stderr)
                failed = True
                continue
            tau = "n/a" if tau_star is None else str(tau_star)
            lines.append(
                f"{prefix} gamma_star={gamma_star:.10g} "
                f"gamma_star_db={_db(gamma_star):.6f} tau_star={tau}"
            )
    _emit("".join(line + "\n" for line in lines), spec.out)
    return 1 if failed else 0


def _cmd_validate(args: argparse.Namespace) -> int:
    spec = _spec_from_args(args)
    report = validate(spec, closed_form_scale=args.closed_form_scale)
    _emit(report.text(), spec.out)
    return 0 if report.ok else 1


def _cmd_budget(args: argparse.Namespace) -> int:
    print(attenuation_budget(args.mar_db, args.excess_db))
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mimomar",
        description=(
            "Maximum allowable out-of-band interference for massive-MIMO "
            "uplink rate targets"
        ),
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="flat key = value spec file")
        p.add_argument("--seed", type=int, help="base seed for Monte-Carlo runs")
        p.add_argument("--out", help="output path (default: stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="table format")
        p.add_argument(
            "--reopt-tau",
            action="store_true",
            help="re-optimize the training length under interference "
            "instead of freezing it at the interference-free optimum",
        )

    p_sweep = sub.add_parser("sweep", help="emit one row per (scenario, R', I, M)")
    add_common(p_sweep)
    p_sweep.set_defaults(func=_cmd_sweep)

    p_mar = sub.add_parser("mar", help="print solved MAR points as key=value lines")
    add_common(p_mar)
    p_mar.set_defaults(func=_cmd_mar)

    p_solve = sub.add_parser("solve", help="print the operating point gamma*(R)")
    add_common(p_solve)
    p_solve.set_defaults(func=_cmd_solve)

    p_validate = sub.add_parser(
        "validate", help="compare closed forms against the Monte-Carlo oracle"
    )
    add_common(p_validate)
    p_validate.add_argument(
        "--trials", type=int, help="Monte-Carlo trials per sweep point"
    )
    p_validate.add_argument(
        "--max-m", type=int, help="validate only sweep points with M up to this"
    )
    p_validate.add_argument(
        "--closed-form-scale",
        type=float,
        default=1.0,
        help=argparse.SUPPRESS,  # negative-control hook for the test suite
    )
    p_validate.set_defaults(func=_cmd_validate)

    p_budget = sub.add_parser(
        "budget", help="required filter attenuation from MAR and interferer excess"
    )
    p_budget.add_argument(
        "--mar-db", type=float, required=True, help="maximum allowable ratio, dB"
    )
    p_budget.add_argument(
        "--excess-db",
        type=float,
        required=True,
        help="interferer power above the useful in-band power, dB",
    )
    p_budget.set_defaults(func=_cmd_budget)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (SolverError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
