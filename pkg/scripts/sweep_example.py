#!/usr/bin/env python3
"""Example parameter sweep: coherence speed limits of the dephasing model
over a gamma x theta x horizon grid, written to sweep.csv."""

import math
import sys

from qspeed.cli import main as qspeed_main

if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "."
    sys.exit(
        qspeed_main(
            [
                "sweep",
                "--model", "dephasing",
                "--gamma", "0.5,1,2,4",
                "--theta", f"{math.pi/2},{math.pi/3},{math.pi/4}",
                "--T", "0.25,0.5,1.0",
                "--steps", "512",
                "--out", out,
            ]
        )
    )
