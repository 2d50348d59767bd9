"""Sweep output schema, serialization round trips, config parsing, and
command-line behavior."""

import json
import math

import pytest

from mimomar import (
    CSV_HEADER,
    DEFAULT_M_GRID,
    Scenario,
    SweepSpec,
    attenuation_budget,
    main,
    read_rows_csv,
    read_rows_json,
    render_csv,
    render_json,
    run_sweep,
    validate,
)
from mimomar.cli import parse_config_text, spec_from_config_text

SMALL_SPEC = SweepSpec(
    scenarios=(Scenario.IMPERFECT_CSI, Scenario.PERFECT_CSI),
    m_list=(20, 40),
    K=4,
    N_u=20,
    R=4.0,
    r_prime_list=(3.5, 3.8),
    i_list=(1, 2),
)


@pytest.fixture(scope="module")
def small_rows():
    rows, failures = run_sweep(SMALL_SPEC)
    assert failures == []
    return rows


class TestRunSweep:
    def test_one_row_per_combination(self, small_rows):
        assert len(small_rows) == 2 * 2 * 2 * 2

    def test_ordering(self, small_rows):
        keys = [(r.scenario.value, r.R_prime, r.I, r.M) for r in small_rows]
        assert keys == sorted(keys)

    def test_row_identity(self, small_rows):
        beta_sum = sum(SMALL_SPEC.betas)
        for row in small_rows:
            lhs = row.r_b_linear * (1.0 + row.gamma_star * beta_sum)
            assert abs(lhs - row.gamma_b_star) <= 1e-9 * row.gamma_b_star

    def test_tau_only_for_imperfect_csi(self, small_rows):
        for row in small_rows:
            if row.scenario is Scenario.PERFECT_CSI:
                assert row.tau_star is None
            else:
                assert SMALL_SPEC.K <= row.tau_star <= SMALL_SPEC.N_u - 1

    def test_sqrtm_rb_consistent(self, small_rows):
        for row in small_rows:
            assert row.sqrtM_rb == pytest.approx(
                math.sqrt(row.M) * row.r_b_linear, rel=1e-12
            )

    def test_failures_recorded_and_sweep_continues(self):
        # M=4 leaves the rate target above the supremum, M=160 is fine
        spec = SweepSpec(
            scenarios=(Scenario.PERFECT_CSI,),
            m_list=(4, 160),
            K=10,
            N_u=100,
            R=10.0,
            r_prime_list=(9.0,),
            i_list=(2,),
        )
        rows, failures = run_sweep(spec)
        assert [r.M for r in rows] == [160]
        assert len(failures) == 1
        assert failures[0].M == 4
        assert "FAILED" in failures[0].line()


class TestSerialization:
    def test_csv_header_exact(self, small_rows):
        text = render_csv(small_rows)
        assert text.splitlines()[0] == CSV_HEADER
        assert (
            CSV_HEADER
            == "M,scenario,R,R_prime,I,gamma_star_db,gamma_b_db,tau_star,r_b_db,sqrtM_rb"
        )

    def test_csv_round_trip_exact(self, small_rows, tmp_path):
        path = tmp_path / "rows.csv"
        path.write_text(render_csv(small_rows))
        assert read_rows_csv(str(path)) == small_rows

    def test_json_round_trip_exact(self, small_rows, tmp_path):
        path = tmp_path / "rows.json"
        path.write_text(render_json(small_rows))
        assert read_rows_json(str(path)) == small_rows

    def test_json_mirrors_field_names(self, small_rows):
        payload = json.loads(render_json(small_rows))
        assert list(payload[0]) == CSV_HEADER.split(",")

    def test_pcsi_tau_rendered_as_na(self, small_rows):
        text = render_csv(small_rows)
        pcsi_lines = [ln for ln in text.splitlines()[1:] if ",pcsi," in ln]
        assert pcsi_lines and all(",n/a," in ln for ln in pcsi_lines)

    def test_rerun_is_byte_identical(self, small_rows):
        rows_again, _ = run_sweep(SMALL_SPEC)
        assert render_csv(rows_again) == render_csv(small_rows)

    def test_csv_rejects_foreign_header(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("a,b,c\n1,2,3\n")
        with pytest.raises(ValueError):
            read_rows_csv(str(path))


class TestAttenuationBudget:
    def test_reference_value_exact(self):
        assert attenuation_budget(-15.0, 31.5) == 46.5

    def test_zero_margin(self):
        with pytest.warns(UserWarning):
            # zero is the boundary; anything above warns, zero itself passes
            attenuation_budget(0.1, 31.5)
        assert attenuation_budget(0.0, 31.5) == 31.5

    def test_perfect_csi_asymptote_budget(self):
        assert attenuation_budget(-8.11, 31.5) == pytest.approx(39.61, abs=1e-9)


class TestSweepSpec:
    def test_defaults(self):
        spec = SweepSpec()
        assert spec.m_list == DEFAULT_M_GRID
        assert spec.betas == (1.0,) * 10
        assert spec.config_for(20).N_c == spec.N_u

    def test_validation(self):
        with pytest.raises(ValueError):
            SweepSpec(m_list=())
        with pytest.raises(ValueError):
            SweepSpec(K=3, betas=(1.0,))
        with pytest.raises(ValueError):
            SweepSpec(r_prime_list=(11.0,))  # above R
        with pytest.raises(ValueError):
            SweepSpec(fmt="xml")
        with pytest.raises(ValueError):
            SweepSpec(i_list=(-1,))


class TestConfigParsing:
    def test_full_config(self):
        text = """
        # experiment grid
        scenarios = icsi, pcsi
        m_list = 10, 20
        k = 4
        n_u = 20
        n_c = 24
        betas = 1.0, 0.5, 0.25, 0.125
        r = 4
        r_prime_list = 3.5
        i_list = 1, 2
        trials = 500
        seed = 7
        format = json
        reopt_tau = true
        validate_max_m = 16
        """
        spec = spec_from_config_text(text)
        assert spec.scenarios == (Scenario.IMPERFECT_CSI, Scenario.PERFECT_CSI)
        assert spec.m_list == (10, 20)
        assert spec.K == 4 and spec.N_u == 20 and spec.N_c == 24
        assert spec.betas == (1.0, 0.5, 0.25, 0.125)
        assert spec.R == 4.0
        assert spec.r_prime_list == (3.5,)
        assert spec.i_list == (1, 2)
        assert spec.trials == 500 and spec.seed == 7
        assert spec.fmt == "json" and spec.reopt_tau is True
        assert spec.validate_max_m == 16

    def test_equal_betas_shorthand(self):
        spec = spec_from_config_text("k = 3\nbetas = equal:0.5\n")
        assert spec.betas == (0.5, 0.5, 0.5)

    def test_fractional_loss_resolves_r_prime(self):
        spec = spec_from_config_text("r = 10\nfractional_loss_list = 0.1, 0.05\n")
        assert spec.r_prime_list == pytest.approx((9.0, 9.5))

    def test_rejects_unknown_key(self):
        with pytest.raises(ValueError):
            parse_config_text("m = 10\n")

    def test_rejects_malformed_line(self):
        with pytest.raises(ValueError):
            parse_config_text("just some words\n")

    def test_rejects_conflicting_keys(self):
        with pytest.raises(ValueError):
            spec_from_config_text("scenario = pcsi\nscenarios = icsi\n")
        with pytest.raises(ValueError):
            spec_from_config_text("r_prime_list = 9\nfractional_loss_list = 0.1\n")


SMALL_CFG_TEXT = """
scenarios = icsi, pcsi
m_list = 20, 40
k = 4
n_u = 20
r = 4
r_prime_list = 3.5, 3.8
i_list = 1, 2
"""

VALIDATE_CFG_TEXT = """
scenarios = icsi
m_list = 16
k = 3
n_u = 12
r = 3
r_prime_list = 2.5
i_list = 2, 0
trials = 3000
"""


class TestMainVerbs:
    def test_sweep_writes_csv(self, tmp_path, capsys):
        cfg = tmp_path / "spec.cfg"
        cfg.write_text(SMALL_CFG_TEXT)
        out = tmp_path / "rows.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out)]) == 0
        rows = read_rows_csv(str(out))
        assert len(rows) == 16

    def test_sweep_rerun_byte_identical(self, tmp_path):
        cfg = tmp_path / "spec.cfg"
        cfg.write_text(SMALL_CFG_TEXT)
        out1, out2 = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(["sweep", "--config", str(cfg), "--out", str(out1)]) == 0
        assert main(["sweep", "--config", str(cfg), "--out", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()

    def test_sweep_json_format(self, tmp_path):
        cfg = tmp_path / "spec.cfg"
        cfg.write_text(SMALL_CFG_TEXT)
        out = tmp_path / "rows.json"
        assert main(
            ["sweep", "--config", str(cfg), "--format", "json", "--out", str(out)]
        ) == 0
        assert len(read_rows_json(str(out))) == 16

    def test_sweep_failure_exit_code(self, tmp_path, capsys):
        cfg = tmp_path / "spec.cfg"
        cfg.write_text(
            "scenarios = pcsi\nm_list = 4\nk = 10\nn_u = 100\nr = 10\n"
            "r_prime_list = 9\ni_list = 2\n"
        )
        assert main(["sweep", "--config", str(cfg)]) == 1
        captured = capsys.readouterr()
        assert "FAILED" in captured.err

    def test_mar_and_solve_print_lines(self, tmp_path, capsys):
        cfg = tmp_path / "spec.cfg"
        cfg.write_text(SMALL_CFG_TEXT)
        assert main(["mar", "--config", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert out.count("\n") == 16 and "r_b_db=" in out
        assert main(["solve", "--config", str(cfg)]) == 0
        out = capsys.readouterr().out
        assert out.count("\n") == 4 and "gamma_star=" in out

    def test_budget_prints_value(self, capsys):
        assert main(["budget", "--mar-db", "-15", "--excess-db", "31.5"]) == 0
        assert capsys.readouterr().out.strip() == "46.5"

    def test_validate_passes_and_reports(self, tmp_path, capsys):
        cfg = tmp_path / "spec.cfg"
        cfg.write_text(VALIDATE_CFG_TEXT)
        assert main(["validate", "--config", str(cfg), "--seed", "5"]) == 0
        out = capsys.readouterr().out
        assert "PASS sinr" in out
        assert "PASS bl_zero" in out
        assert "failed=0" in out

    def test_validate_negative_control_fails(self, tmp_path, capsys):
        # corrupting the closed form must flip the report to failing
        cfg = tmp_path / "spec.cfg"
        cfg.write_text(VALIDATE_CFG_TEXT)
        code = main(
            [
                "validate",
                "--config",
                str(cfg),
                "--seed",
                "5",
                "--closed-form-scale",
                "1.2",
            ]
        )
        assert code == 1
        assert "FAIL sinr" in capsys.readouterr().out

    def test_bad_config_path_is_an_error(self, capsys):
        assert main(["sweep", "--config", "/nonexistent/path.cfg"]) == 1
        assert "error:" in capsys.readouterr().err


class TestValidateFunction:
    def test_max_m_limits_points(self):
        spec = SweepSpec(
            scenarios=(Scenario.PERFECT_CSI,),
            m_list=(16, 4096),
            K=3,
            N_u=12,
            R=3.0,
            r_prime_list=(2.5,),
            i_list=(1,),
            trials=400,
            validate_max_m=64,
        )
        report = validate(spec)
        assert report.ok
        assert all("M=16" in line for line in report.lines)

    def test_negative_control(self):
        spec = SweepSpec(
            scenarios=(Scenario.PERFECT_CSI,),
            m_list=(16,),
            K=3,
            N_u=12,
            R=3.0,
            r_prime_list=(2.5,),
            i_list=(1,),
            trials=2000,
        )
        assert validate(spec).ok
        assert not validate(spec, closed_form_scale=1.1).ok
