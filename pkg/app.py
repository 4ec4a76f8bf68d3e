#!/usr/bin/env python3
"""
ConeLab command line

Exact lattice queries on symplectic and Kähler cones of b+ = 1 surfaces:

    python app.py model ruled
    python app.py check-cone ruled --class 4,1,-9 --kahler
    python app.py enumerate-exceptional ruled --bound 5 --sphere-sublattice
    python app.py certify ruled --start r --curve c
    python app.py slice ruled --u r --v c --s-range 0 2 --t-range 0 6 --steps 7
    python app.py verify-paper

Model arguments are a model file path or a built-in name
(ruled, burniat, bidisk, ball-quotient, rational:<n>).
"""

import argparse
import logging
import sys
from typing import List, Optional

from config.constants import EXIT_USAGE_ERROR
from conelab.handlers.commands import (
    handle_certify,
    handle_check_cone,
    handle_enumerate_exceptional,
    handle_model,
    handle_slice,
    handle_verify_paper,
)
from conelab.settings import load_config

HANDLERS = {
    "model": handle_model,
    "check-cone": handle_check_cone,
    "enumerate-exceptional": handle_enumerate_exceptional,
    "certify": handle_certify,
    "slice": handle_slice,
    "verify-paper": handle_verify_paper,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="conelab", description="Exact symplectic and Kähler cone queries")
    parser.add_argument("--env", default=None, help="Config environment (default $CONELAB_ENV or dev)")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    model = commands.add_parser("model", help="Emit a model file")
    model.add_argument("source", help="Built-in model name or model file")

    check = commands.add_parser("check-cone", help="Cone membership of one class")
    check.add_argument("source")
    check.add_argument("--class", dest="cls", required=True, help="Class name or comma-separated coefficients")
    check.add_argument("--kahler", action="store_true", help="Also test the Kähler cone")

    enumerate_ = commands.add_parser("enumerate-exceptional", help="List exceptional classes")
    enumerate_.add_argument("source")
    enumerate_.add_argument("--bound", type=int, required=True)
    enumerate_.add_argument("--sphere-sublattice", action="store_true", help="Search the sphere sublattice only")

    certify = commands.add_parser("certify", help="Certificate for a symplectic non-Kähler class")
    certify.add_argument("source")
    certify.add_argument("--start", required=True)
    certify.add_argument("--curve", required=True)

    slice_ = commands.add_parser("slice", help="CSV verdicts on a two-parameter slice")
    slice_.add_argument("source")
    slice_.add_argument("--u", required=True)
    slice_.add_argument("--v", required=True)
    slice_.add_argument("--s-range", nargs=2, required=True, metavar=("LO", "HI"))
    slice_.add_argument("--t-range", nargs=2, required=True, metavar=("LO", "HI"))
    slice_.add_argument("--steps", type=int, default=None)

    commands.add_parser("verify-paper", help="Re-derive every lattice identity and report PASS/FAIL")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    config = load_config(args.env)
    logging.basicConfig(
        level=config["log_level"],
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )

    response = HANDLERS[args.command](vars(args))
    if response["body"]:
        sys.stdout.write(response["body"])
    if response["error"]:
        sys.stderr.write(f"error: {response['error']}\n")
    return response["exitCode"]


if __name__ == "__main__":
    sys.exit(main())
