"""End-to-end command tests: exit codes, stdout summaries, output files."""

import csv
import os

import numpy as np
import pytest

from conftest import parse_pairs
from gaussmin import load_measure

THREE_POINT_SIGMA_SQ = 0.5744706733790146
THREE_POINT_RATE = -0.8703664489242229
CSTAR_H075 = 0.75321300310123562

BM_INTERVAL = "[kernel]\nkind = bm\n[interval]\na = 1.0\nb = 2.0\n"
FGN_THREE_POINT = "[kernel]\nkind = fgn\nH = 0.75\nh = 1.0\n[interval]\na = 0.0\nb = 2.0\n"


def _read_csv(path):
    with open(path, newline="") as handle:
        rows = list(csv.reader(handle))
    return rows[0], rows[1:]


class TestRate:
    def test_pinned_left_endpoint(self, run_cli, write_ini):
        code, out, _ = run_cli("rate", "--config", write_ini("r.ini", BM_INTERVAL))
        pairs = parse_pairs(out)
        assert code == 0
        assert pairs["closed_form"] == "left_endpoint"
        assert float(pairs["sigma_sq"]) == 1.0
        assert float(pairs["rate"]) == -0.5
        assert pairs["verified"] == "True"
        assert pairs["atom_locations"] == "1.0"

    def test_smooth_pinned_variance_at_left_end(self, run_cli, write_ini):
        body = "[kernel]\nkind = fbm\nH = 0.75\n[interval]\na = 0.5\nb = 2.0\n"
        code, out, _ = run_cli("rate", "--config", write_ini("r.ini", body))
        assert code == 0
        assert float(parse_pairs(out)["sigma_sq"]) == pytest.approx(
            0.5**1.5, rel=1e-15
        )

    def test_short_interval_two_point(self, run_cli, write_ini):
        body = "[kernel]\nkind = fgn\nH = 0.6\nh = 1.0\n[interval]\na = 0.0\nb = 0.5\n"
        code, out, _ = run_cli("rate", "--config", write_ini("r.ini", body))
        pairs = parse_pairs(out)
        assert code == 0
        assert pairs["closed_form"] == "two_point"
        assert float(pairs["sigma_sq"]) == pytest.approx(0.79785809378712147, rel=1e-15)
        assert pairs["atom_weights"] == "0.5;0.5"

    def test_double_lag_three_point(self, run_cli, write_ini):
        code, out, _ = run_cli("rate", "--config", write_ini("r.ini", FGN_THREE_POINT))
        pairs = parse_pairs(out)
        assert code == 0
        assert pairs["closed_form"] == "three_point"
        assert float(pairs["sigma_sq"]) == pytest.approx(THREE_POINT_SIGMA_SQ, rel=1e-14)
        assert float(pairs["rate"]) == pytest.approx(THREE_POINT_RATE, rel=1e-14)
        weights = [float(w) for w in pairs["atom_weights"].split(";")]
        np.testing.assert_allclose(
            weights,
            [0.36321199953421474, 0.27357600093157047, 0.36321199953421474],
            rtol=1e-14,
        )

    def test_output_files(self, run_cli, write_ini, tmp_path):
        out_dir = tmp_path / "out"
        code, out, _ = run_cli(
            "rate", "--config", write_ini("r.ini", FGN_THREE_POINT), "--out", out_dir
        )
        assert code == 0
        assert sorted(os.listdir(out_dir)) == ["measure.csv", "potential.csv", "rate.txt"]
        mu = load_measure(out_dir / "measure.csv")
        np.testing.assert_array_equal(mu.locations, [0.0, 1.0, 2.0])
        header, rows = _read_csv(out_dir / "potential.csv")
        assert header == ["t", "phi"]
        assert len(rows) == 401
        report = (out_dir / "rate.txt").read_text()
        assert parse_pairs(report) == parse_pairs(out)

    def test_no_closed_form_for_odd_width(self, run_cli, write_ini):
        body = "[kernel]\nkind = fgn\nH = 0.75\nh = 1.0\n[interval]\na = 0.0\nb = 1.5\n"
        code, out, err = run_cli("rate", "--config", write_ini("r.ini", body))
        assert code == 3
        assert out == ""
        assert "no applicable closed form" in err
        assert "gaussmin solve" in err

    def test_no_closed_form_for_rough_pinned(self, run_cli, write_ini):
        body = "[kernel]\nkind = fbm\nH = 0.3\n[interval]\na = 1.0\nb = 2.0\n"
        code, _, err = run_cli("rate", "--config", write_ini("r.ini", body))
        assert code == 3
        assert "negative" in err

    def test_pinned_interval_must_avoid_origin(self, run_cli, write_ini):
        body = "[kernel]\nkind = bm\n[interval]\na = 0.0\nb = 1.0\n"
        code, _, err = run_cli("rate", "--config", write_ini("r.ini", body))
        assert code == 4
        assert "a > 0" in err


class TestSolve:
    def test_matches_rate_within_solver_tolerance(self, run_cli, write_ini):
        cfg = write_ini(
            "s.ini",
            FGN_THREE_POINT + "[grid]\nn = 101\n[solver]\ntol = 1e-5\n",
        )
        code_r, out_r, _ = run_cli("rate", "--config", cfg)
        code_s, out_s, _ = run_cli("solve", "--config", cfg)
        assert code_r == 0 and code_s == 0
        sigma_r = float(parse_pairs(out_r)["sigma_sq"])
        sigma_s = float(parse_pairs(out_s)["sigma_sq"])
        assert abs(sigma_r - sigma_s) <= 1e-5

    def test_solution_files(self, run_cli, write_ini, tmp_path):
        out_dir = tmp_path / "out"
        cfg = write_ini(
            "s.ini", BM_INTERVAL + "[grid]\nn = 51\n[solver]\ntol = 1e-8\n"
        )
        code, out, _ = run_cli("solve", "--config", cfg, "--out", out_dir)
        pairs = parse_pairs(out)
        assert code == 0
        assert pairs["converged"] == "True"
        # Brownian motion minimum sits at the left endpoint
        assert float(pairs["sigma_sq"]) == pytest.approx(1.0, abs=1e-7)
        header, rows = _read_csv(out_dir / "solution.csv")
        assert header == ["node", "weight"]
        assert len(rows) == 51
        total = sum(float(w) for _, w in rows)
        assert total == pytest.approx(1.0, abs=1e-12)
        mu = load_measure(out_dir / "measure.csv")
        assert np.all(mu.locations >= 1.0 - 1e-12)

    def test_iteration_starved_run_exits_two(self, run_cli, write_ini):
        cfg = write_ini(
            "s.ini", FGN_THREE_POINT + "[solver]\nmax_iter = 1\ntol = 1e-9\n"
        )
        code, out, _ = run_cli("solve", "--config", cfg)
        assert code == 2
        assert parse_pairs(out)["converged"] == "False"


class TestVerify:
    def _measure_csv(self, tmp_path, locations, weights):
        path = tmp_path / "mu.csv"
        lines = ["location,weight"]
        lines += [f"{x!r},{w!r}" for x, w in zip(locations, weights)]
        path.write_text("\n".join(lines) + "\n")
        return path

    def test_uniform_three_point_passes_tight(self, run_cli, write_ini, tmp_path):
        # H = 1/2 makes the uniform three-point potential exactly flat
        body = "[kernel]\nkind = fgn\nH = 0.5\nh = 1.0\n[interval]\na = 0.0\nb = 2.0\n"
        mu = self._measure_csv(tmp_path, [0.0, 1.0, 2.0], [1 / 3, 1 / 3, 1 / 3])
        code, out, _ = run_cli(
            "verify", "--config", write_ini("v.ini", body),
            "--measure", mu, "--tol", "1e-12",
        )
        pairs = parse_pairs(out)
        assert code == 0
        assert pairs["verified"] == "True"
        assert float(pairs["sigma_sq"]) == pytest.approx(1.0 / 3.0, rel=1e-15)

    def test_wrong_measure_fails(self, run_cli, write_ini, tmp_path):
        body = "[kernel]\nkind = fgn\nH = 0.75\nh = 1.0\n[interval]\na = 0.0\nb = 1.0\n"
        mu = self._measure_csv(tmp_path, [0.0], [1.0])
        code, out, _ = run_cli(
            "verify", "--config", write_ini("v.ini", body), "--measure", mu
        )
        assert code == 2
        pairs = parse_pairs(out)
        assert pairs["verified"] == "False"
        assert float(pairs["global_slack"]) < 0.0

    def test_rate_output_verifies(self, run_cli, write_ini, tmp_path):
        out_dir = tmp_path / "out"
        cfg = write_ini("v.ini", FGN_THREE_POINT)
        assert run_cli("rate", "--config", cfg, "--out", out_dir)[0] == 0
        code, out, _ = run_cli(
            "verify", "--config", cfg, "--measure", out_dir / "measure.csv"
        )
        assert code == 0
        assert float(parse_pairs(out)["sigma_sq"]) == pytest.approx(
            THREE_POINT_SIGMA_SQ, rel=1e-14
        )

    def test_atoms_outside_interval_rejected(self, run_cli, write_ini, tmp_path):
        mu = self._measure_csv(tmp_path, [1.0, 5.0], [0.5, 0.5])
        code, _, err = run_cli(
            "verify", "--config", write_ini("v.ini", BM_INTERVAL), "--measure", mu
        )
        assert code == 4
        assert "outside the interval" in err

    def test_loose_tolerance_accepts_near_optimum(self, run_cli, write_ini, tmp_path):
        mu = self._measure_csv(tmp_path, [0.0, 1.0, 2.0], [0.36, 0.28, 0.36])
        cfg = write_ini("v.ini", FGN_THREE_POINT)
        strict = run_cli("verify", "--config", cfg, "--measure", mu)
        loose = run_cli("verify", "--config", cfg, "--measure", mu, "--tol", "0.01")
        assert strict[0] == 2
        assert loose[0] == 0


class TestAssumptions:
    def test_pinned_kernel_two_audits(self, run_cli, write_ini):
        code, out, _ = run_cli(
            "assumptions", "--config", write_ini("a.ini", BM_INTERVAL)
        )
        pairs = parse_pairs(out)
        assert code == 0
        assert pairs["applicable_audits"] == "2"
        assert pairs["all_passed"] == "True"
        assert "nonneg_increments" in out
        assert "converse" in out

    def test_increment_kernel_three_audits(self, run_cli, write_ini):
        code, out, _ = run_cli(
            "assumptions", "--config", write_ini("a.ini", FGN_THREE_POINT)
        )
        pairs = parse_pairs(out)
        assert code == 0
        assert pairs["applicable_audits"] == "3"
        for name in ("increment_monotone", "first_case", "second_case"):
            assert name in out

    def test_degenerate_case_exits_two(self, run_cli, write_ini):
        body = "[kernel]\nkind = fgn\nH = 0.5\nh = 1.0\n[interval]\na = 0.0\nb = 2.0\n"
        code, out, _ = run_cli("assumptions", "--config", write_ini("a.ini", body))
        assert code == 2
        pairs = parse_pairs(out)
        assert pairs["all_passed"] == "False"
        assert "degenerate" in out

    def test_rough_pinned_fails_and_reports_witness(self, run_cli, write_ini):
        body = "[kernel]\nkind = fbm\nH = 0.3\n[interval]\na = 1.0\nb = 2.0\n"
        code, out, _ = run_cli("assumptions", "--config", write_ini("a.ini", body))
        assert code == 2
        pairs = parse_pairs(out)
        assert float(pairs["worst_violation"]) < 0.0 or "False" in pairs["passed"]


class TestSimulate:
    def test_closed_form_rate_attached(self, run_cli, write_ini, tmp_path):
        out_dir = tmp_path / "out"
        body = BM_INTERVAL + "[grid]\nn = 20\n[mc]\nu_list = 1.0, 1.5\ntrials = 2000\nseed = 7\n"
        code, out, _ = run_cli(
            "simulate", "--config", write_ini("m.ini", body), "--out", out_dir
        )
        pairs = parse_pairs(out)
        assert code == 0
        assert float(pairs["theoretical_rate"]) == -0.5
        assert pairs["flagged_levels"] == "0"
        header, rows = _read_csv(out_dir / "ldp.csv")
        assert header == ["u", "trials", "hits", "p_hat", "log_p_over_u2", "ci_halfwidth", "flag"]
        assert len(rows) == 2
        p = [float(r[3]) for r in rows]
        assert p[0] >= p[1]

    def test_sigma_sq_override(self, run_cli, write_ini):
        body = BM_INTERVAL + "[grid]\nn = 10\n[mc]\nu_list = 1.0\ntrials = 100\nsigma_sq = 0.6\n"
        code, out, _ = run_cli("simulate", "--config", write_ini("m.ini", body))
        assert code == 0
        assert float(parse_pairs(out)["theoretical_rate"]) == pytest.approx(
            -1.0 / 1.2, rel=1e-15
        )

    def test_no_closed_form_leaves_rate_blank(self, run_cli, write_ini):
        body = (
            "[kernel]\nkind = fgn\nH = 0.75\nh = 1.0\n"
            "[interval]\na = 0.0\nb = 1.5\n"
            "[grid]\nn = 10\n[mc]\nu_list = 1.0\ntrials = 100\n"
        )
        code, out, _ = run_cli("simulate", "--config", write_ini("m.ini", body))
        assert code == 0
        assert parse_pairs(out)["theoretical_rate"] == ""

    def test_svg_written_when_requested(self, run_cli, write_ini, tmp_path):
        out_dir = tmp_path / "out"
        body = (
            BM_INTERVAL
            + "[grid]\nn = 10\n[mc]\nu_list = 1.0, 2.0\ntrials = 500\n"
            + "[output]\nformats = csv, svg\n"
        )
        code, _, _ = run_cli(
            "simulate", "--config", write_ini("m.ini", body), "--out", out_dir
        )
        assert code == 0
        svg = (out_dir / "ldp.svg").read_text()
        assert svg.startswith("<svg") and "polyline" in svg

    def test_missing_mc_section_rejected(self, run_cli, write_ini):
        code, _, err = run_cli("simulate", "--config", write_ini("m.ini", BM_INTERVAL))
        assert code == 4
        assert "u_list" in err

    def test_indefinite_tabulated_matrix_exits_five(self, run_cli, write_ini, tmp_path):
        (tmp_path / "m.csv").write_text(
            "i,j,value\n0,0,1.0\n0,1,2.0\n1,0,2.0\n1,1,1.0\n"
        )
        body = (
            "[kernel]\nkind = tabulated\npath = m.csv\n"
            "[interval]\na = 0.0\nb = 1.0\n[grid]\nn = 2\n"
            "[mc]\nu_list = 1.0\ntrials = 10\n"
        )
        code, _, err = run_cli("simulate", "--config", write_ini("m.ini", body))
        assert code == 5
        assert "numerical failure" in err


class TestFigures:
    def test_six_tables_for_increment_kernel(self, run_cli, write_ini, tmp_path):
        out_dir = tmp_path / "figs"
        body = FGN_THREE_POINT + "[output]\nformats = csv, svg\n"
        code, out, _ = run_cli(
            "figures", "--config", write_ini("f.ini", body), "--out", out_dir
        )
        pairs = parse_pairs(out)
        assert code == 0
        assert float(pairs["interior_weight"]) == pytest.approx(CSTAR_H075, rel=1e-14)
        stems = [
            "increment_function", "increment_function_d1", "increment_function_d2",
            "autocovariance", "three_point_potential", "three_point_potential_d1",
        ]
        for stem in stems:
            assert (out_dir / f"{stem}.csv").exists()
            assert (out_dir / f"{stem}.svg").exists()

        _, rows = _read_csv(out_dir / "autocovariance.csv")
        gam = np.array([float(v) for _, v in rows])
        assert np.all(np.diff(gam) < 0.0)

        _, rows = _read_csv(out_dir / "increment_function_d1.csv")
        d1 = np.array([float(v) for _, v in rows])
        assert np.all(d1 > 0.0)

    def test_potential_slope_changes_sign_once(self, run_cli, write_ini, tmp_path):
        out_dir = tmp_path / "figs"
        code, _, _ = run_cli(
            "figures", "--config", write_ini("f.ini", FGN_THREE_POINT), "--out", out_dir
        )
        assert code == 0
        _, rows = _read_csv(out_dir / "three_point_potential_d1.csv")
        d1 = np.array([float(v) for _, v in rows])
        signs = np.sign(d1[np.abs(d1) > 1e-12])
        changes = np.count_nonzero(signs[1:] != signs[:-1])
        assert changes == 1
        assert signs[0] > 0 > signs[-1]

    def test_pinned_kernel_rejected(self, run_cli, write_ini, tmp_path):
        code, _, err = run_cli(
            "figures", "--config", write_ini("f.ini", BM_INTERVAL),
            "--out", tmp_path / "figs",
        )
        assert code == 4
        assert "increment" in err

    def test_output_directory_required(self, run_cli, write_ini):
        code, _, err = run_cli("figures", "--config", write_ini("f.ini", FGN_THREE_POINT))
        assert code == 4
        assert "output directory" in err


class TestInvocation:
    def test_missing_config_file(self, run_cli, tmp_path):
        code, _, err = run_cli("rate", "--config", tmp_path / "absent.ini")
        assert code == 4
        assert "not found" in err

    def test_unknown_command(self, run_cli):
        code, _, err = run_cli("transmogrify", "--config", "x.ini")
        assert code == 4
        assert "error:" in err

    def test_missing_required_option(self, run_cli):
        assert run_cli("rate")[0] == 4

    def test_missing_interval_section(self, run_cli, write_ini):
        code, _, err = run_cli("rate", "--config", write_ini("i.ini", "[kernel]\nkind = bm\n"))
        assert code == 4
        assert "interval" in err

    def test_out_flag_overrides_config_dir(self, run_cli, write_ini, tmp_path):
        cfg_out = tmp_path / "from_config"
        cli_out = tmp_path / "from_flag"
        body = BM_INTERVAL + f"[output]\ndir = {cfg_out.name}\n"
        code, _, _ = run_cli(
            "rate", "--config", write_ini("o.ini", body), "--out", cli_out
        )
        assert code == 0
        assert cli_out.is_dir()
        assert not cfg_out.exists()

    def test_reruns_are_byte_identical(self, run_cli, write_ini, tmp_path):
        cfg = write_ini("r.ini", FGN_THREE_POINT)
        dirs = [tmp_path / "first", tmp_path / "second"]
        for d in dirs:
            assert run_cli("rate", "--config", cfg, "--out", d)[0] == 0
        for name in os.listdir(dirs[0]):
            a = (dirs[0] / name).read_bytes()
            b = (dirs[1] / name).read_bytes()
            assert a == b, name
