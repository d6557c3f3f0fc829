"""Command-line entry point.

Thin adapters only: every subcommand resolves a config, echoes it to
standard error, and calls the library.  Exit codes: 0 success, 1 usage
error, 2 numerical failure, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from ._version import __version__
from . import bounds as bounds_mod
from .experiments import (
    CampaignConfig,
    aggregate,
    derive_seed,
    figure1_curve,
    lambda1_distribution_study,
    run_campaign,
    write_bounds_csv,
    write_curve_csv,
    write_manifest,
    write_summary_csv,
    write_trials_csv,
)
from .graphgen import sample_gnp, to_edgelist_text
from .lambertw import p_bound, threshold_constants
from .search import (
    CalibrationError,
    GapError,
    MatrixKind,
    assemble_hamiltonian,
    calibrate_r_empirical,
    calibrate_r_eq3,
    peak_scan,
    search_matrix,
    spectral_gap_c,
    success_probability,
    SearchSetup,
)
from .spectral import SpectralFlag, eig_sym

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3

_MATRIX_FLAGS = {
    "adj": MatrixKind.ADJACENCY_NORMALIZED,
    "lap": MatrixKind.LAPLACIAN_COMPLEMENT,
    "lap-threshold": MatrixKind.LAPLACIAN_THRESHOLD,
}


class _UsageError(SystemExit):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(EXIT_USAGE)


def _echo_config(args: argparse.Namespace) -> None:
    resolved = {k: v for k, v in vars(args).items() if k != "func" and v is not None}
    print(f"config: {json.dumps(resolved, sort_keys=True, default=str)}", file=sys.stderr)


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(tok) for tok in text.split(","))
    except ValueError:
        raise ValueError(f"bad sizes list {text!r}")
    return sizes


def _load_config_defaults(args: argparse.Namespace) -> dict:
    if getattr(args, "config", None) is None:
        return {}
    with open(args.config) as fh:
        return json.load(fh)


def _fill(args: argparse.Namespace, config: dict, key: str, default):
    """Flag > config file > hard default."""
    value = getattr(args, key, None)
    if value is None:
        value = config.get(key, default)
    setattr(args, key, value)
    return value


def _progress_printer(quiet: bool):
    if quiet:
        return None

    def show(rec):
        print(f"  n={rec.n} trial={rec.trial_index} p_at_t={rec.p_at_t:.4f}", file=sys.stderr)

    return show


def _out_dir(args: argparse.Namespace) -> Path:
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    return out


# --- subcommand bodies -----------------------------------------------------


def _cmd_gen(args) -> int:
    g = sample_gnp(args.n, args.p, args.seed)
    text = to_edgelist_text(g)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    return EXIT_OK


def _build_search_setup(args):
    kind = _MATRIX_FLAGS[args.matrix]
    constants = threshold_constants(args.p0) if kind is MatrixKind.LAPLACIAN_THRESHOLD else None
    g = sample_gnp(args.n, args.p, args.seed)
    w = args.w if args.w is not None else int(
        np.random.default_rng(derive_seed(args.seed, args.n, 0, "vertex")).integers(args.n)
    )
    m = search_matrix(g, kind, constants)
    base = eig_sym(m)
    c = spectral_gap_c(base)
    t_window = 4.0 * math.sqrt(args.n)
    if args.r is not None:
        r = args.r
    elif args.calibrate == "eq3":
        r = calibrate_r_eq3(base, w)
    elif args.calibrate == "empirical":
        r = calibrate_r_empirical(base, w, t_max=t_window)
    else:
        r = 0.0
    ham = assemble_hamiltonian(m / base.eigenvalues[0], r, w)
    setup = SearchSetup(
        graph=g, kind=kind, r=r, w=w, base_spectrum=base,
        hamiltonian_spectrum=ham, normalized=True,
    )
    return setup, c, t_window


def _cmd_search(args) -> int:
    setup, c, t_window = _build_search_setup(args)
    t = args.t_factor * math.sqrt(args.n)
    p_at_t = success_probability(setup, t)
    t_peak, p_peak = peak_scan(setup, t_window, 513)
    print(f"w {setup.w}")
    print(f"c {c!r}")
    print(f"r {setup.r!r}")
    print(f"bound {(1.0 - c) / (1.0 + c)!r}")
    print(f"t {t!r}")
    print(f"p_at_t {p_at_t!r}")
    print(f"t_peak {t_peak!r}")
    print(f"p_peak {p_peak!r}")
    return EXIT_OK


def _cmd_calibrate(args) -> int:
    setup, c, _ = _build_search_setup(args)
    print(f"w {setup.w}")
    print(f"c {c!r}")
    print(f"method {args.calibrate}")
    print(f"r {setup.r!r}")
    return EXIT_OK


def _cmd_bounds(args) -> int:
    out = _out_dir(args)
    rows = []
    for i in range(args.trials):
        seed = derive_seed(args.seed, args.n, i, "graph")
        g = sample_gnp(args.n, args.p, seed)
        reports = [
            bounds_mod.check_operator_deviation(g),
            *bounds_mod.check_eigenvalue_bands(g),
            bounds_mod.check_degree_concentration(g),
            bounds_mod.check_alpha_overlap(g),
            bounds_mod.check_laplacian_norm(g),
            bounds_mod.check_mu1_vs_maxdeg(g),
            bounds_mod.check_algebraic_connectivity(g),
        ]
        rows.extend((args.n, args.p, seed, rep) for rep in reports)
    write_bounds_csv(rows, out / "bounds.csv")
    write_manifest(
        out / "manifest.json",
        {"command": "bounds", "n": args.n, "p": args.p, "trials": args.trials,
         "master_seed": args.seed},
    )
    return EXIT_OK


def _cmd_fig1(args) -> int:
    if args.p0_min <= 1.0:
        raise CalibrationError(f"p0 grid must start above 1, got {args.p0_min!r}")
    out = _out_dir(args)
    grid = list(np.linspace(args.p0_min, args.p0_max, args.points))
    curve = figure1_curve(grid)
    write_curve_csv(curve, out / "curve.csv")
    write_manifest(
        out / "manifest.json",
        {"command": "fig1", "p0_min": args.p0_min, "p0_max": args.p0_max,
         "points": args.points, "master_seed": None},
    )
    return EXIT_OK


def _campaign_config_from_args(args, *, kind, p_fixed, p0) -> CampaignConfig:
    return CampaignConfig(
        sizes=args.sizes,
        trials_per_size=args.trials,
        kind=kind,
        master_seed=args.seed,
        p_fixed=p_fixed,
        p0=p0,
        calibration=args.calibrate,
        t_factor=args.t_factor,
        threads=args.threads,
    )


def _cmd_fig2(args) -> int:
    config = _load_config_defaults(args)
    _fill(args, config, "p0", 2.0)
    _fill(args, config, "trials", 30)
    _fill(args, config, "seed", 1)
    _fill(args, config, "t_factor", math.pi / 2.0)
    _fill(args, config, "calibrate", "empirical")
    _fill(args, config, "threads", 1)
    sizes = _fill(args, config, "sizes", "128,256,512,1024")
    if isinstance(sizes, str):
        args.sizes = _parse_sizes(sizes)
    elif isinstance(sizes, list):
        args.sizes = tuple(int(x) for x in sizes)
    out = _out_dir(args)
    cfg = _campaign_config_from_args(
        args, kind=MatrixKind.LAPLACIAN_THRESHOLD, p_fixed=None, p0=args.p0
    )
    records = run_campaign(cfg, progress=_progress_printer(args.quiet))
    write_trials_csv(records, out / "trials.csv")
    write_summary_csv(aggregate(records), out / "summary.csv")
    write_manifest(out / "manifest.json", cfg, extras={"p_bound_limit": p_bound(args.p0)})
    return EXIT_OK


def _cmd_infnorm_study(args) -> int:
    config = _load_config_defaults(args)
    _fill(args, config, "p", 0.5)
    _fill(args, config, "trials", 20)
    _fill(args, config, "seed", 1)
    _fill(args, config, "threads", 1)
    sizes = _fill(args, config, "sizes", "128,256,512,1024")
    if isinstance(sizes, str):
        args.sizes = _parse_sizes(sizes)
    elif isinstance(sizes, list):
        args.sizes = tuple(int(x) for x in sizes)
    args.calibrate = "none"
    args.t_factor = math.pi / 2.0
    out = _out_dir(args)
    cfg = _campaign_config_from_args(
        args, kind=MatrixKind.ADJACENCY_NORMALIZED, p_fixed=args.p, p0=None
    )
    records = run_campaign(cfg, progress=_progress_printer(args.quiet))
    write_trials_csv(records, out / "trials.csv")
    write_manifest(out / "manifest.json", cfg)
    return EXIT_OK


def _cmd_lambda1_study(args) -> int:
    out = _out_dir(args)
    summary = lambda1_distribution_study(args.n, args.p, args.trials, args.seed)
    payload = {
        "n": summary.n,
        "p": summary.p,
        "trials": summary.trials,
        "mean_z": summary.mean_z,
        "sd_z": summary.sd_z,
        "ks_distance": summary.ks_distance,
    }
    (out / "lambda1.json").write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    write_manifest(
        out / "manifest.json",
        {"command": "lambda1-study", "n": args.n, "p": args.p,
         "trials": args.trials, "master_seed": args.seed},
    )
    print(json.dumps(payload, sort_keys=True))
    return EXIT_OK


# --- parser ----------------------------------------------------------------


def _build_parser() -> _Parser:
    parser = _Parser(prog="qsearchlab", description=__doc__)
    parser.add_argument("--version", action="version", version=f"qsearchlab {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--quiet", action="store_true", help="suppress progress output")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def add_parser(name, **kwargs):
        return sub.add_parser(name, parents=[common], **kwargs)

    p = add_parser("gen", help="sample a graph and dump its edge list")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=_cmd_gen)

    for name, func in (("search", _cmd_search), ("calibrate", _cmd_calibrate)):
        p = add_parser(name, help=f"{name} one sampled instance")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--p", type=float, required=True)
        p.add_argument("--matrix", choices=sorted(_MATRIX_FLAGS), default="adj")
        p.add_argument("--seed", type=int, required=True)
        p.add_argument("--w", type=int, default=None)
        p.add_argument("--r", type=float, default=None)
        p.add_argument("--calibrate", choices=["eq3", "empirical"],
                       default="empirical" if name == "calibrate" else None)
        p.add_argument("--t-factor", dest="t_factor", type=float, default=math.pi / 2.0)
        p.add_argument("--p0", type=float, default=2.0)
        p.set_defaults(func=func)

    p = add_parser("bounds", help="concentration-inequality reports on samples")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, default=10)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_bounds)

    p = add_parser("fig1", help="success-probability lower-bound curve")
    p.add_argument("--p0-min", dest="p0_min", type=float, required=True)
    p.add_argument("--p0-max", dest="p0_max", type=float, required=True)
    p.add_argument("--points", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_fig1)

    p = add_parser("fig2", help="threshold-regime campaign: bound vs success")
    p.add_argument("--config", default=None, help="optional JSON config file")
    p.add_argument("--p0", type=float, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--sizes", default=None, help="comma-separated sizes")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--t-factor", dest="t_factor", type=float, default=None)
    p.add_argument("--calibrate", choices=["none", "eq3", "empirical"], default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_fig2)

    p = add_parser("infnorm-study", help="scaled eigenvector deviation campaign")
    p.add_argument("--config", default=None)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--sizes", default=None)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_infnorm_study)

    p = add_parser("lambda1-study", help="leading-eigenvalue distribution summary")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--trials", type=int, default=200)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_lambda1_study)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        return int(exc.code)
    _echo_config(args)
    try:
        return args.func(args)
    except (CalibrationError, GapError, SpectralFlag, ArithmeticError, ValueError) as exc:
        print(f"qsearchlab: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"qsearchlab: i/o failure: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
