#!/usr/bin/env python3
"""Walk the whole constant pipeline and print derived values next to targets.

The chain: psi-interval inputs -> seven Mertens iteration rows -> M and m
assemblies -> mu*mu bounds -> the split u bounds -> partial-summation U
bounds -> the final dyadic W assembly, plus the what-if calculator.
"""

from omegasum.pipeline import run_pipeline


def main() -> None:
    report = run_pipeline()
    print(f"{'node':18} {'derived':>14} {'target':>12} {'rel':>9}  met")
    for node in report.nodes:
        if node.target is None:
            continue
        rel = 100.0 * (node.c / node.target - 1.0)
        print(f"{node.name:18} {node.c:14.6g} {node.target:12g} "
              f"{rel:+8.3f}%  {node.met}")
    print(f"\nall targets met: {report.all_met}")


if __name__ == "__main__":
    main()
