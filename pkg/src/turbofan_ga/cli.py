"""Command line interface: ``turbofan-ga {analyze,optimize,compare,verify}``."""

import argparse
import json
import logging
import sys
from pathlib import Path

from . import fluid
from .config import PRESETS, ExperimentConfig, load_config
from .cycle import DESIGN_BOUNDS, DESIGN_VARIABLES, ComponentEfficiencies, EngineDesign
from .environment import FlightCondition
from .exceptions import ConvergenceError, ModelInconsistencyError
from .metrics import CHEMICAL_MODES, DESTRUCTION_SETS, EFFICIENCY_MODES
from .report import analyze, format_report
from .runner import ConfigMismatch, cmd_compare, cmd_optimize, cmd_verify, format_comparison

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_IO = 4


class UsageError(Exception):
    pass


def _floats(text, n=None):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if n is not None and len(vals) != n:
        raise argparse.ArgumentTypeError(f"expected {n} values, got {len(vals)}")
    return vals


def _ints(text):
    try:
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _add_mode_flags(p):
    p.add_argument("--efficiency-mode", choices=EFFICIENCY_MODES)
    p.add_argument("--chemical-mode", choices=CHEMICAL_MODES)
    p.add_argument("--destruction-set", choices=DESTRUCTION_SETS)


def build_parser():
    parser = argparse.ArgumentParser(prog="turbofan-ga", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="evaluate a single design point")
    p.add_argument(
        "--design",
        required=True,
        type=lambda s: _floats(s, len(DESIGN_VARIABLES)),
        help="comma-separated " + ",".join(DESIGN_VARIABLES),
    )
    p.add_argument("--mach", type=float, default=0.86)
    p.add_argument("--altitude", type=float, default=11000.0)
    p.add_argument("--mdot", type=float, default=350.0)
    p.add_argument("--pi-max", type=float, default=45.0)
    p.add_argument("--output", type=Path, help="also write the report to this file")
    p.add_argument("--efficiency-mode", choices=EFFICIENCY_MODES, default="overall")
    p.add_argument("--chemical-mode", choices=CHEMICAL_MODES, default="paper-constant")
    p.add_argument("--destruction-set", choices=DESTRUCTION_SETS, default="internal")

    p = sub.add_parser("optimize", help="run GA repetitions for one case")
    p.add_argument("--config", type=Path, help="YAML experiment configuration")
    p.add_argument("--output-dir", type=Path)
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.add_argument("--case", choices=("a", "b", "c", "custom"))
    p.add_argument("--weights", type=lambda s: _floats(s, 2), help="w_I,w_II (implies --case custom)")
    p.add_argument("--seeds", type=_ints, help="comma-separated seeds, one per repetition")
    p.add_argument("--repetitions", type=int)
    p.add_argument("--population", type=int)
    p.add_argument("--generations", type=int)
    p.add_argument("--jobs", type=int, default=1, help="fitness-evaluation worker processes")
    _add_mode_flags(p)

    p = sub.add_parser("compare", help="compare the final results of two runs")
    p.add_argument("run_a", type=Path)
    p.add_argument("run_b", type=Path)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("verify", help="replay a run and diff its CSVs")
    p.add_argument("run_dir", type=Path)
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _experiment_config(args):
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    changes = {}
    if args.preset:
        changes.update(PRESETS[args.preset])
    if args.population is not None:
        changes["population_size"] = args.population
    if args.generations is not None:
        changes["generations"] = args.generations
    if args.weights is not None:
        changes["case"] = "custom"
        changes["weights"] = tuple(args.weights)
    elif args.case is not None:
        if args.case == "custom" and cfg.case != "custom":
            raise UsageError("--case custom requires --weights")
        changes["case"] = args.case
    if args.seeds is not None:
        changes["seeds"] = tuple(args.seeds)
        if args.repetitions is not None and args.repetitions != len(args.seeds):
            raise UsageError("--repetitions does not match the number of --seeds")
    elif args.repetitions is not None:
        changes["repetitions"] = args.repetitions
    for name in ("efficiency_mode", "chemical_mode", "destruction_set"):
        if getattr(args, name) is not None:
            changes[name] = getattr(args, name)
    if args.output_dir is not None:
        changes["output_dir"] = str(args.output_dir)
    return cfg.updated(**changes)


def _analyze(args):
    design = EngineDesign.from_sequence(args.design)
    bad = design.bound_violations(DESIGN_BOUNDS)
    if bad:
        raise UsageError("design out of bounds: " + "; ".join(bad))
    fc = FlightCondition(args.mach, args.altitude, args.mdot)
    analysis = analyze(design, fc, ComponentEfficiencies(), fluid.KEROSENE, args.pi_max,
                       args.efficiency_mode, args.chemical_mode, args.destruction_set)
    text = format_report(design, analysis)
    sys.stdout.write(text)
    if args.output:
        args.output.write_text(text, encoding="utf-8")
    return EXIT_OK


def _optimize(args):
    cfg = _experiment_config(args)

    def progress(rep, seed, best):
        logging.getLogger("turbofan_ga").info(
            "repetition %d (seed %d): best score %.6f", rep, seed, best.score
        )

    art = cmd_optimize(cfg, n_jobs=args.jobs, progress=progress)
    best = art.summary["best"]
    print(f"wrote {len(art.csv_paths)} convergence tables to {art.output_dir}")
    print(
        f"best score {best['score']:.6f}  eta_I {best['eta_I']:.6f}  eta_II {best['eta_II']:.6f}  "
        f"specific thrust {best['specific_thrust']:.3f} N/(kg/s)  TSFC {best['tsfc']:.6f} kg/(h N)"
    )
    return EXIT_OK


def _compare(args):
    cmp = cmd_compare(args.run_a, args.run_b)
    if args.json:
        print(json.dumps(cmp, indent=2))
    else:
        sys.stdout.write(format_comparison(cmp))
    return EXIT_OK


def _verify(args):
    problems = cmd_verify(args.run_dir, n_jobs=args.jobs)
    if problems:
        for p in problems:
            print(f"MISMATCH {p}")
        return EXIT_MISMATCH
    print(f"{args.run_dir}: all convergence tables reproduced")
    return EXIT_OK


COMMANDS = {"analyze": _analyze, "optimize": _optimize, "compare": _compare, "verify": _verify}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return COMMANDS[args.command](args)
    except (UsageError, ConfigMismatch, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ConvergenceError, ModelInconsistencyError, ArithmeticError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
