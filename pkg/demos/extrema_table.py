#!/usr/bin/env python3
"""Rebuild the normalized-extrema table on [1e4, 1e6].

For each a, scans |W_a(x)| / x^{log2 a} over every integer in the window
with exact arithmetic and prints the supremum, which is sharp to four
decimal places.
"""

import math
import time

from omegasum.summatory import SeriesKind, scan_extrema

WINDOW = (10**4, 10**6)
VALUES_OF_A = (2, 3, 10, 20, 1000, 2000)


def main() -> None:
    print(f"max |W_a(x)| / x^(log2 a) for x in [{WINDOW[0]:g}, {WINDOW[1]:g}]\n")
    print(f"{'a':>6}  {'max':>8}  {'at x':>9}  {'min':>9}  {'at x':>9}  secs")
    for a in VALUES_OF_A:
        t0 = time.time()
        rec = scan_extrema(SeriesKind.W(a), *WINDOW, math.log2(a))
        print(f"{a:>6}  {rec.max_abs:8.4f}  {rec.arg_max:>9}  "
              f"{rec.min:9.4f}  {rec.arg_min:>9}  {time.time() - t0:4.1f}")


if __name__ == "__main__":
    main()
