"""Command line front end.

Subcommands:

    gaussmin rate        --config run.ini [--out DIR]
    gaussmin solve       --config run.ini [--out DIR]
    gaussmin verify      --config run.ini --measure m.csv [--tol T] [--out DIR]
    gaussmin assumptions --config run.ini [--out DIR]
    gaussmin simulate    --config run.ini [--out DIR]
    gaussmin figures     --config run.ini [--out DIR]

Every command prints a key-value summary to stdout and, when an output
directory is configured (--out wins over [output] dir), writes the same
summary plus CSV tables there.  Exit codes: 0 success, 2 a verification,
convergence, or assumption check failed, 3 no closed form applies to the
configured problem, 4 malformed input, 5 numerical failure.
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import audits
from .config import build_kernel, load_config
from .energy import check_optimality, energy, potential, rate
from .errors import (
    ConfigError,
    DegenerateKernelError,
    DomainError,
    FactorizationError,
    GridError,
    IntervalError,
)
from .kernels import (
    gamma,
    increment_function,
    increment_function_d1,
    increment_function_d2,
)
from .measures import (
    Grid,
    c_star,
    dirac,
    load_measure,
    save_measure,
    three_point,
    two_point,
)
from .montecarlo import ldp_curve
from .output import ensure_dir, render_pairs, write_csv, write_report, write_svg
from .solver import discretize, extract_measure, solve

EXIT_OK = 0
EXIT_CHECK_FAILED = 2
EXIT_NO_CLOSED_FORM = 3
EXIT_BAD_INPUT = 4
EXIT_NUMERICAL = 5

_VERIFY_GRID_TOL = 1e-8


def _kernel_label(cfg):
    if not cfg.kernel_params:
        return cfg.kernel_kind
    inner = ", ".join(f"{k}={v}" for k, v in sorted(cfg.kernel_params.items()))
    return f"{cfg.kernel_kind}({inner})"


def _is_increment_kernel(kernel):
    return kernel.stationary and hasattr(kernel, "increment")


def _closed_form(kernel, cfg):
    """Pick the closed-form minimizer for the configured problem.

    Returns (name, measure) on success and (None, reason) when no
    template applies; the reason is a printable sentence.
    """
    a, b = cfg.interval()
    if kernel.pinned_origin:
        rep = audits.audit_nonneg_increments(
            kernel, a, b, samples=cfg.audit_samples, seed=cfg.audit_seed
        )
        if rep.passed:
            return "left_endpoint", dirac(a)
        return None, (
            "increment correlations go negative on the interval, so the "
            "left-endpoint measure is not guaranteed optimal"
        )
    if _is_increment_kernel(kernel):
        h = kernel.h
        width = b - a
        tol = 1e-12 * max(1.0, abs(a), abs(b), h)
        if width <= h + tol:
            return "two_point", two_point(a, b)
        if abs(width - 2.0 * h) <= tol:
            rep = audits.audit_second_case(kernel, h)
            if not rep.passed:
                return None, (
                    "the interior-weight potential audit failed, so the "
                    "three-point template does not apply"
                )
            cstar = c_star(kernel, h)
            if cstar <= 0.0:
                return None, "the interior atom weight is not positive"
            return "three_point", three_point(a, h, cstar)
        return None, (
            f"interval width {width!r} is neither <= lag {h!r} nor equal to "
            f"twice the lag"
        )
    return None, "no closed-form template covers this kernel type"


def _interval_pairs(a, b):
    return [("interval_a", a), ("interval_b", b)]


def _measure_pairs(mu):
    return [
        ("atom_count", len(mu)),
        ("atom_locations", ";".join(repr(float(x)) for x in mu.locations)),
        ("atom_weights", ";".join(repr(float(w)) for w in mu.weights)),
    ]


def _optimality_pairs(report):
    return [
        ("energy", report.energy),
        ("min_potential", report.min_potential),
        ("argmin", report.argmin),
        ("support_deviation", report.support_deviation),
        ("global_slack", report.global_slack),
        ("tolerance", report.tolerance),
        ("verified", report.passed),
    ]


def _emit(pairs, out_dir, stem):
    print(render_pairs(pairs))
    if out_dir:
        ensure_dir(out_dir)
        write_report(os.path.join(out_dir, stem + ".txt"), pairs)


def _write_potential(out_dir, kernel, mu, grid):
    prof = potential(kernel, mu, grid)
    write_csv(
        os.path.join(out_dir, "potential.csv"),
        ("t", "phi"),
        zip(prof.grid.nodes, prof.values),
    )


def cmd_rate(cfg, out_dir, args):
    kernel = build_kernel(cfg)
    a, b = cfg.interval()
    if kernel.pinned_origin and a <= 0.0:
        raise ConfigError(
            "a pinned-origin kernel needs a > 0; the exceedance event is "
            "degenerate when the interval touches the origin"
        )
    name, picked = _closed_form(kernel, cfg)
    if name is None:
        print(f"no applicable closed form: {picked}", file=sys.stderr)
        print("use 'gaussmin solve' for a numerical minimizer", file=sys.stderr)
        return EXIT_NO_CLOSED_FORM
    mu = picked
    grid = Grid(a, b, cfg.n)
    report = check_optimality(kernel, mu, grid, tol=_VERIFY_GRID_TOL)
    pairs = (
        [
            ("command", "rate"),
            ("kernel", _kernel_label(cfg)),
        ]
        + _interval_pairs(a, b)
        + [
            ("closed_form", name),
            ("sigma_sq", report.energy),
            ("rate", rate(report.energy)),
        ]
        + _measure_pairs(mu)
        + _optimality_pairs(report)
    )
    _emit(pairs, out_dir, "rate")
    if out_dir:
        save_measure(mu, os.path.join(out_dir, "measure.csv"))
        _write_potential(out_dir, kernel, mu, grid)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def cmd_solve(cfg, out_dir, args):
    kernel = build_kernel(cfg)
    a, b = cfg.interval()
    grid = Grid(a, b, cfg.n)
    problem = discretize(kernel, grid)
    result = solve(problem, tol=cfg.tol, max_iter=cfg.max_iter)
    mu = extract_measure(result, grid, prune=cfg.prune)
    sigma_sq = result.energy
    rate_value = rate(sigma_sq) if sigma_sq > 0.0 else float("-inf")
    pairs = (
        [
            ("command", "solve"),
            ("kernel", _kernel_label(cfg)),
        ]
        + _interval_pairs(a, b)
        + [
            ("grid_n", cfg.n),
            ("sigma_sq", sigma_sq),
            ("rate", rate_value),
            ("equilibrium_gap", result.equilibrium_gap),
            ("iterations", result.iterations),
            ("converged", result.converged),
            ("tolerance", cfg.tol),
            ("prune", cfg.prune),
        ]
        + _measure_pairs(mu)
    )
    _emit(pairs, out_dir, "solve")
    if out_dir:
        write_csv(
            os.path.join(out_dir, "solution.csv"),
            ("node", "weight"),
            zip(grid.nodes, result.weights),
        )
        save_measure(mu, os.path.join(out_dir, "measure.csv"))
    return EXIT_OK if result.converged else EXIT_CHECK_FAILED


def cmd_verify(cfg, out_dir, args):
    kernel = build_kernel(cfg)
    a, b = cfg.interval()
    mu = load_measure(args.measure)
    slack = 1e-12 * max(1.0, abs(a), abs(b))
    if np.any(mu.locations < a - slack) or np.any(mu.locations > b + slack):
        raise ConfigError(
            f"measure atoms fall outside the interval [{a}, {b}]"
        )
    grid = Grid(a, b, cfg.n)
    report = check_optimality(kernel, mu, grid, tol=args.tol)
    pairs = (
        [
            ("command", "verify"),
            ("kernel", _kernel_label(cfg)),
            ("measure_file", args.measure),
        ]
        + _interval_pairs(a, b)
        + [("sigma_sq", report.energy), ("rate", rate(report.energy))]
        + _measure_pairs(mu)
        + _optimality_pairs(report)
    )
    _emit(pairs, out_dir, "verify")
    if out_dir:
        _write_potential(out_dir, kernel, mu, grid)
    return EXIT_OK if report.passed else EXIT_CHECK_FAILED


def _applicable_audits(kernel, cfg):
    # nonneg increment correlation backs the left-endpoint form, so it is a
    # hypothesis about pinned base processes, not about increment kernels
    a, b = cfg.interval()
    reports = []
    if kernel.pinned_origin:
        reports.append(
            audits.audit_nonneg_increments(
                kernel, a, b, samples=cfg.audit_samples, seed=cfg.audit_seed
            )
        )
        reports.append(audits.audit_converse(kernel, a, b))
    if _is_increment_kernel(kernel):
        reports.append(
            audits.audit_increment_monotone(
                kernel, samples=cfg.audit_samples, seed=cfg.audit_seed
            )
        )
        reports.append(audits.audit_first_case(kernel, b_samples=cfg.b_samples))
        reports.append(audits.audit_second_case(kernel, kernel.h))
    return reports


def cmd_assumptions(cfg, out_dir, args):
    kernel = build_kernel(cfg)
    a, b = cfg.interval()
    reports = _applicable_audits(kernel, cfg)
    pairs = [
        ("command", "assumptions"),
        ("kernel", _kernel_label(cfg)),
    ] + _interval_pairs(a, b)
    pairs.append(("applicable_audits", len(reports)))
    for rep in reports:
        pairs.extend(rep.rows())
    all_passed = all(rep.passed for rep in reports)
    pairs.append(("all_passed", all_passed))
    _emit(pairs, out_dir, "assumptions")
    return EXIT_OK if all_passed else EXIT_CHECK_FAILED


def cmd_simulate(cfg, out_dir, args):
    kernel = build_kernel(cfg)
    a, b = cfg.interval()
    if cfg.u_list is None or cfg.trials is None:
        raise ConfigError("simulate needs [mc] u_list and trials")
    sigma_sq = cfg.mc_sigma_sq
    if sigma_sq is None:
        try:
            name, picked = _closed_form(kernel, cfg)
        except (DegenerateKernelError, ValueError):
            name = None
        if name is not None:
            sigma_sq = energy(kernel, picked)
    est = ldp_curve(
        kernel,
        (a, b),
        cfg.n,
        cfg.u_list,
        cfg.trials,
        seed=cfg.mc_seed,
        sigma_sq=sigma_sq,
    )
    pairs = (
        [
            ("command", "simulate"),
            ("kernel", _kernel_label(cfg)),
        ]
        + _interval_pairs(a, b)
        + [
            ("grid_n", cfg.n),
            ("trials", cfg.trials),
            ("seed", cfg.mc_seed),
            (
                "theoretical_rate",
                "" if est.theoretical_rate is None else est.theoretical_rate,
            ),
            ("levels", ";".join(repr(float(x)) for x in est.u)),
            ("normalized_log_tail", ";".join(repr(float(x)) for x in est.log_p_over_u2)),
            ("flagged_levels", int(np.count_nonzero(est.flagged))),
        ]
    )
    _emit(pairs, out_dir, "simulate")
    if out_dir:
        rows = []
        for i in range(est.u.size):
            rows.append(
                (
                    est.u[i],
                    est.trials,
                    int(est.hits[i]),
                    est.p_hat[i],
                    est.log_p_over_u2[i],
                    est.ci_halfwidth[i],
                    int(est.flagged[i]),
                )
            )
        write_csv(
            os.path.join(out_dir, "ldp.csv"),
            ("u", "trials", "hits", "p_hat", "log_p_over_u2", "ci_halfwidth", "flag"),
            rows,
        )
        if "svg" in cfg.formats:
            write_svg(
                os.path.join(out_dir, "ldp.svg"),
                est.u,
                est.log_p_over_u2,
                "normalized log tail probability vs level",
                ylabel="log p / u^2",
            )
    return EXIT_OK


def _figure_grids(h):
    # midpoint grids never land on the derivative singularities at 0 and -h
    m = 600
    sym = -3.0 * h + (np.arange(m) + 0.5) * (6.0 * h / m)
    gam = np.linspace(0.0, 3.0 * h, 601)
    m2 = 512
    pot = (np.arange(m2) + 0.5) * (h / m2)
    return sym, gam, pot


def cmd_figures(cfg, out_dir, args):
    kernel = build_kernel(cfg)
    if not _is_increment_kernel(kernel):
        raise ConfigError(
            "figures needs an increment-type kernel (fgn or increment)"
        )
    if not out_dir:
        raise ConfigError("figures needs an output directory (--out or [output] dir)")
    h = kernel.h
    try:
        cstar = c_star(kernel, h)
    except DegenerateKernelError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    sym, gam_grid, pot_grid = _figure_grids(h)
    f = increment_function(kernel, sym)
    f1 = increment_function_d1(kernel, sym)
    f2 = increment_function_d2(kernel, sym)
    gam = gamma(kernel, gam_grid)

    def g(t):
        return gamma(kernel, t)

    def g1(t):
        return 0.5 * (
            increment_function_d1(kernel, t) - increment_function_d1(kernel, -t)
        )

    pot = g(pot_grid) + cstar * g(h - pot_grid) + g(2.0 * h - pot_grid)
    pot_d1 = g1(pot_grid) - cstar * g1(h - pot_grid) - g1(2.0 * h - pot_grid)

    ensure_dir(out_dir)
    tables = [
        ("increment_function", sym, f, "f"),
        ("increment_function_d1", sym, f1, "f'"),
        ("increment_function_d2", sym, f2, "f''"),
        ("autocovariance", gam_grid, gam, "Gamma"),
        ("three_point_potential", pot_grid, pot, "gamma_pot"),
        ("three_point_potential_d1", pot_grid, pot_d1, "gamma_pot'"),
    ]
    written = []
    for stem, x, y, label in tables:
        path = write_csv(
            os.path.join(out_dir, stem + ".csv"), ("t", "value"), zip(x, y)
        )
        written.append(os.path.basename(path))
        if "svg" in cfg.formats:
            svg = write_svg(
                os.path.join(out_dir, stem + ".svg"),
                x,
                y,
                stem.replace("_", " "),
                ylabel=label,
            )
            written.append(os.path.basename(svg))
    pairs = [
        ("command", "figures"),
        ("kernel", _kernel_label(cfg)),
        ("lag", h),
        ("interior_weight", cstar),
        ("files", ";".join(written)),
    ]
    _emit(pairs, out_dir, "figures")
    return EXIT_OK


_DISPATCH = {
    "rate": cmd_rate,
    "solve": cmd_solve,
    "verify": cmd_verify,
    "assumptions": cmd_assumptions,
    "simulate": cmd_simulate,
    "figures": cmd_figures,
}


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; route them through ConfigError so
    # bad invocations share the malformed-input exit code
    def error(self, message):
        raise ConfigError(message)


def _build_parser():
    parser = _Parser(
        prog="gaussmin",
        description=(
            "Large-deviation decay rates for high minima of centered "
            "Gaussian processes, via minimum-energy probability measures."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = [
        ("rate", "closed-form minimizer, energy, and decay rate"),
        ("solve", "discretized minimum-energy solve on the interval"),
        ("verify", "equilibrium check for a measure loaded from CSV"),
        ("assumptions", "run the audits applicable to the kernel"),
        ("simulate", "Monte Carlo check of the decay rate"),
        ("figures", "CSV/SVG curves for increment-kernel diagnostics"),
    ]
    for name, help_text in specs:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", required=True, help="run configuration file")
        p.add_argument("--out", default=None, help="output directory override")
        if name == "verify":
            p.add_argument("--measure", required=True, help="measure CSV to verify")
            p.add_argument(
                "--tol",
                type=float,
                default=_VERIFY_GRID_TOL,
                help="equilibrium tolerance (default %(default)s)",
            )
    return parser


def main(argv=None):
    try:
        args = _build_parser().parse_args(argv)
        cfg = load_config(args.config)
        out_dir = args.out if args.out is not None else cfg.out_dir
        return _DISPATCH[args.command](cfg, out_dir, args)
    except (ConfigError, DomainError, GridError, IntervalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except FactorizationError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    raise SystemExit(main())
