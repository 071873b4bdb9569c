"""Command-line entry point: ``tcm3 run`` and ``tcm3 presets``."""

import argparse
import logging
import sys
from pathlib import Path

from .dynamics import PRESETS
from .scenario import ConfigError, NumericalInvariantError, parse_config, run_scenario

log = logging.getLogger("tcm3")

EXIT_OK, EXIT_CONFIG, EXIT_NUMERIC = 0, 1, 2

_PRESET_TEXT = {
    "eee": "all three atoms excited, |eee>",
    "ghz": "(|eee> + |ggg>)/sqrt(2)",
    "w": "(|eeg> + |ege> + |gee>)/sqrt(3)",
}


def _cmd_run(args):
    try:
        text = Path(args.config).read_text()
    except OSError as exc:
        log.error("cannot read %s: %s", args.config, exc)
        return EXIT_CONFIG
    try:
        scenario = parse_config(text)
        result = run_scenario(scenario, output_dir=args.out, svg=not args.no_svg)
    except ConfigError as exc:
        log.error("%s: %s", args.config, exc)
        return EXIT_CONFIG
    except NumericalInvariantError as exc:
        log.error("numerical invariant violated: %s", exc)
        return EXIT_NUMERIC
    except OSError as exc:
        log.error("cannot write output: %s", exc)
        return EXIT_CONFIG
    m = result.manifest
    print(f"wrote {len(result.files)} files to {result.output_dir} "
          f"(n_max={m['n_max']}, norm drift={float(m['norm_drift']):.2e}, {m['wall_time_s']} s)")
    return EXIT_OK


def _cmd_presets(args):
    for name, state in PRESETS.items():
        c = ", ".join(f"{v.real:.6g}" if v.imag == 0 else f"{v:.6g}" for v in state.coefficients)
        print(f"{name:4s} {_PRESET_TEXT[name]:36s} (c_e, c_w1, c_w2, c_g) = ({c})")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="tcm3", description="Three-atom Tavis-Cummings dynamics")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run a scenario file")
    run.add_argument("config")
    run.add_argument("--out", default=None, help="output directory (overrides output_dir)")
    run.add_argument("--no-svg", action="store_true", help="skip SVG plots")
    run.set_defaults(func=_cmd_run)
    presets = sub.add_parser("presets", help="list built-in atomic initial states")
    presets.set_defaults(func=_cmd_presets)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
