"""Command-line driver: estimate on a CSV, run a simulation grid, self-test.

Exit codes are fixed: 0 for success, 2 for input or usage problems (with a
one-line message on stderr), 1 for anything unexpected or a failed
self-test. JSON and CSV outputs are byte-stable for a given invocation and
seed; wall-clock information only ever goes to the human-readable table.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import _jsonfmt, _threads
from .bias_correction import DEFAULT_LAMBDA_EXPONENT, PipelineConfig, estimate
from .bootstrap import (
    DEFAULT_B_REPS,
    confidence_interval,
    default_m,
    mn_bootstrap_pair,
)
from .dataset import load_csv
from .errors import InputError
from .selftest import run_selftest
from .simulation import format_report, raw_csv_lines, run_study

DEFAULT_SIM_RHOS = (0.0, 0.3, 0.5, 0.7, 0.9)
DEFAULT_SIM_DS = (6,)
DEFAULT_SIM_NS = (300,)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse prints usage plus the error; the contract here is a single
    # diagnostic line and exit code 2, so route errors through an exception.
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="nncorr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True)

    est = sub.add_parser("estimate", help="estimate dependence from a CSV file")
    est.add_argument("--input", required=True, help="CSV with covariates and response")
    est.add_argument("--y-column", default="last",
                     help='response column: 0-based index or "last" (default)')
    est.add_argument("--degree", type=int, default=2, help="polynomial total degree")
    est.add_argument("--lambda-exponent", type=float, default=DEFAULT_LAMBDA_EXPONENT,
                     help="ridge penalty exponent c in n**-c")
    est.add_argument("--bootstrap-reps", type=int, default=DEFAULT_B_REPS)
    est.add_argument("--m", type=int, default=None,
                     help="bootstrap subsample size (default floor(sqrt(n)))")
    est.add_argument("--alpha", type=float, default=0.05)
    est.add_argument("--seed", type=int, default=0)
    est.add_argument("--no-scale", action="store_true",
                     help="skip min-max rescaling of the covariates")
    est.add_argument("--threads", type=int, default=None)
    est.add_argument("--output", default="-", help='JSON destination path or "-"')

    sim = sub.add_parser("simulate", help="run the Monte-Carlo study grid")
    sim.add_argument("--rho", type=float, action="append",
                     help="mixing weight, repeatable")
    sim.add_argument("--d", type=int, action="append", help="dimension, repeatable")
    sim.add_argument("--n", type=int, action="append", help="sample size, repeatable")
    sim.add_argument("--reps", type=int, default=200)
    sim.add_argument("--bootstrap-reps", type=int, default=DEFAULT_B_REPS)
    sim.add_argument("--alpha", type=float, default=0.05)
    sim.add_argument("--seed", type=int, default=0)
    sim.add_argument("--threads", type=int, default=None)
    sim.add_argument("--out-dir", default=".",
                     help="directory for report.json, report.txt, raw.csv")

    st = sub.add_parser("selftest", help="run the built-in oracle suites")
    st.add_argument("--quick", action="store_true", help="smaller instances, < 10 s")
    st.add_argument("--threads", type=int, default=None)

    return parser


def _parse_y_column(raw: str):
    if raw == "last":
        return "last"
    try:
        return int(raw)
    except ValueError:
        raise InputError(f'invalid --y-column {raw!r}; use an integer or "last"') from None


def _cmd_estimate(args) -> int:
    sample = load_csv(args.input, y_column=_parse_y_column(args.y_column))
    config = PipelineConfig(
        degree=args.degree,
        lambda_exponent=args.lambda_exponent,
        scale_covariates=not args.no_scale,
    )
    res = estimate(sample, config)
    m_eff = default_m(sample.n) if args.m is None else args.m
    v_t, v_bc = mn_bootstrap_pair(
        sample, config, b_reps=args.bootstrap_reps, m=m_eff, seed=args.seed
    )
    ci_t = confidence_interval(res.t_hat, v_t, args.alpha)
    ci_bc = confidence_interval(res.t_bc, v_bc, args.alpha)

    payload = {
        "n": res.n,
        "d": res.d,
        "t_hat": res.t_hat,
        "l_hat": res.l_hat,
        "t_bc": res.t_bc,
        "se_t": v_t.se,
        "se_tbc": v_bc.se,
        "ci_t": [ci_t[0], ci_t[1]],
        "ci_tbc": [ci_bc[0], ci_bc[1]],
        "config": {
            "degree": config.degree,
            "lambda_exponent": config.lambda_exponent,
            "scale_covariates": config.scale_covariates,
            "clamp_ghat": config.clamp_ghat,
            "m": m_eff,
            "bootstrap_reps": args.bootstrap_reps,
            "alpha": args.alpha,
            "seed": args.seed,
        },
    }
    text = _jsonfmt.dumps(payload) + "\n"
    if args.output == "-":
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text, encoding="utf-8")
    return 0


def _cmd_simulate(args) -> int:
    rhos = args.rho if args.rho else list(DEFAULT_SIM_RHOS)
    ds = args.d if args.d else list(DEFAULT_SIM_DS)
    ns = args.n if args.n else list(DEFAULT_SIM_NS)
    grid = [(rho, d, n) for rho in rhos for d in ds for n in ns]

    records: list = []
    report = run_study(
        grid,
        reps=args.reps,
        alpha=args.alpha,
        b_reps=args.bootstrap_reps,
        seed=args.seed,
        records=records,
    )

    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / "report.json").write_text(
        _jsonfmt.dumps(report.to_dict()) + "\n", encoding="utf-8"
    )
    (out_dir / "report.txt").write_text(format_report(report), encoding="utf-8")
    (out_dir / "raw.csv").write_text(
        "\n".join(raw_csv_lines(records)) + "\n", encoding="utf-8"
    )
    sys.stdout.write(format_report(report))
    return 0


def _cmd_selftest(args) -> int:
    return 0 if run_selftest(quick=args.quick) else 1


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "threads", None) is not None:
            _threads.set_workers(args.threads)
        if args.subcommand == "estimate":
            return _cmd_estimate(args)
        if args.subcommand == "simulate":
            return _cmd_simulate(args)
        return _cmd_selftest(args)
    except _UsageError as exc:
        print(f"nncorr: error: {exc}", file=sys.stderr)
        return 2
    except InputError as exc:
        print(f"nncorr: error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001 - the CLI boundary reports and exits
        print(f"nncorr: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
