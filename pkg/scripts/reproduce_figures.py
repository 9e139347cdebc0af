#!/usr/bin/env python3
"""Regenerate all three reference figures (CSV + PNG) into an output
directory. Thin wrapper over `qspeed reproduce`."""

import argparse
import sys

from qspeed.cli import main as qspeed_main


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures", help="output directory")
    parser.add_argument("--steps", type=int, default=1024, help="RK4 steps per horizon")
    args = parser.parse_args()
    for fig in ("fig1", "fig2", "fig3"):
        rc = qspeed_main(["reproduce", fig, "--steps", str(args.steps), "--out", args.out])
        if rc != 0:
            return rc
    return 0


if __name__ == "__main__":
    sys.exit(main())
