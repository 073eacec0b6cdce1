from typing import Any, Dict, List
from dotenv import load_dotenv
from src.common.logger import log
from src.harness.experiment import COMMANDS, FIGURE_IDS
from src.harness.runner import execute
import argparse
import sys


load_dotenv()


def _floats(text: str) -> List[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="parafloquet",
        description="Driven spinful chain lab: verification, sweeps and spin-lattice checks.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON experiment file; flags override its values")
    parser.add_argument("--N", type=int, help="chain length")
    parser.add_argument("--T", type=float, help="driving period")

    model = parser.add_argument_group("uniform couplings")
    for family in ("mu", "J1", "J2", "Delta", "U"):
        model.add_argument(f"--{family}", type=float)

    sweep = parser.add_argument_group("sweeps")
    sweep.add_argument("--axis", help="swept family or axis")
    sweep.add_argument("--values", type=_floats, help="comma-separated values (disorder: widths)")
    sweep.add_argument("--delta-window", type=float, help="spectral window half-width in radians")
    sweep.add_argument("--case", choices=("B2", "B3", "B4"), help="cross-deform from this solvable point")
    sweep.add_argument("--boundary", choices=("open", "periodic"))
    sweep.add_argument("--sizes", type=lambda text: [int(x) for x in text.split(",")], help="disorder sizes")
    sweep.add_argument("--seed", type=int)
    sweep.add_argument("--realizations", type=int, help="realizations per size for --values widths")

    parser.add_argument("--figure", choices=FIGURE_IDS)
    parser.add_argument("--n", type=int, help="spin-lattice order: Z_{2^n} parafermions")
    parser.add_argument("--jobs", type=int, help="worker processes (-1 for all cores)")
    parser.add_argument("--output", help="directory for result tables")
    parser.add_argument("--name", help="base name of the result files")
    return parser


def overrides_from(args: argparse.Namespace) -> Dict[str, Any]:
    """Keeps only the flags that were given, nested the way ExperimentConfig expects."""
    overrides: Dict[str, Any] = {"command": args.command}
    for key in ("N", "T", "seed", "jobs", "output", "name", "figure", "case", "boundary", "sizes"):
        if getattr(args, key) is not None:
            overrides[key] = getattr(args, key)
    model = {f: getattr(args, f) for f in ("mu", "J1", "J2", "Delta", "U") if getattr(args, f) is not None}
    if model:
        overrides["model"] = model
    sweep = {}
    if args.axis is not None:
        sweep["axis"] = args.axis
    if args.values is not None:
        sweep["values"] = args.values
    if sweep:
        overrides["sweep"] = sweep
    if args.delta_window is not None:
        overrides["spectral"] = {"delta": args.delta_window}
    lattice = {"n": args.n} if args.n is not None else {}
    if args.command == "paragen" and args.N is not None:
        lattice["N"] = args.N
    if lattice:
        overrides["lattice"] = lattice
    if args.realizations is not None:
        overrides["realizations"] = args.realizations
    return overrides


def main(argv: List[str] = None) -> int:
    args = build_parser().parse_args(argv)
    log.info(f"parafloquet {args.command}")
    return execute(args.config, overrides_from(args))


if __name__ == "__main__":
    sys.exit(main())
