"""Command line driver: `knlab <experiment> --config <path> [options]`."""

from __future__ import annotations

import argparse
import sys

from .experiments import EXPERIMENTS, ConfigError, load_config, run_experiment


def build_parser():
    parser = argparse.ArgumentParser(
        prog="knlab",
        description="Run a named numerical experiment and write CSV, SVG, "
                    "and summary files.")
    parser.add_argument("experiment", nargs="?", default=None,
                        help="experiment name: " + ", ".join(EXPERIMENTS))
    parser.add_argument("--experiment", dest="experiment_opt", default=None,
                        help="experiment name (alternative to the positional)")
    parser.add_argument("--config", default=None,
                        help="path of a `key = value` configuration file")
    parser.add_argument("--out", default=None, help="output directory")
    parser.add_argument("--seed", type=int, default=None,
                        help="unsigned 64-bit seed for random coefficients")
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker count for per-tube evaluation")
    parser.add_argument("--lambda-grid", dest="lambda_grid", default=None,
                        help="comma-separated frequency grid override")
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    overrides = {
        "experiment": args.experiment_opt or args.experiment,
        "out_dir": args.out,
        "seed": args.seed,
        "jobs": args.jobs,
        "lam_grid": args.lambda_grid,
    }
    try:
        config = load_config(args.config, overrides)
        paths = run_experiment(config)
    except ConfigError as err:
        print("knlab: error: %s" % err, file=sys.stderr)
        return 2
    for path in paths:
        print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
