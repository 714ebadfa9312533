#!/usr/bin/env python3
"""Write the CSV inputs consumed by the SVG figure renderer in frontend/.

Figure 1: U(x)/x^0.81 split into a dense small-x panel (the maximum sits at
x = 1 and the minimum at x = 7) and a sparser full-range panel.

Figure 2: normalized W_a(x)/x^{log2 a} for a selection of a, with a log-x
column so the renderer can use u = log x on the horizontal axis.
"""

import pathlib
import sys

from omegasum.cli import main as cli

OUT = pathlib.Path(__file__).resolve().parent.parent / "data"


def run(*args: str) -> None:
    rc = cli(list(args))
    if rc != 0:
        sys.exit(rc)


def main() -> None:
    OUT.mkdir(exist_ok=True)
    run("summatory", "--kind", "U", "--xmax", "50", "--stride", "1",
        "--exponent", "0.81", "--out", str(OUT / "fig1_small.csv"))
    run("summatory", "--kind", "U", "--xmax", "1000000", "--stride", "1000",
        "--exponent", "0.81", "--out", str(OUT / "fig1_full.csv"))
    for a in ("1.5", "2", "3", "10"):
        run("summatory", "--kind", "W", "--a", a, "--xmax", "1000000",
            "--stride", "100", "--with-log-x",
            "--out", str(OUT / f"fig2_a{a.replace('.', '_')}.csv"))
    print(f"wrote CSVs under {OUT}")


if __name__ == "__main__":
    main()
