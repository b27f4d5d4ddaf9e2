#!/usr/bin/env python3
"""Fit the small-width LDCh cost coefficient zeta at k_Gr for a range of qubit counts."""

import argparse

from groverdep.costing import ZETA_REFERENCE, fit_zeta
from groverdep.grover import GroverInstance


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=list(range(4, 21, 2)))
    parser.add_argument("--points", type=int, default=11)
    args = parser.parse_args()
    print(f"reference 70/2048 = {ZETA_REFERENCE:.5f}, interval [{1 / 32:.5f}, {1 / 16:.5f}]")
    print(f"{'n':>3} {'zeta':>9} {'rel. to ref':>11} {'alpha_max':>10} {'residual':>9}")
    for n in args.n:
        fit = fit_zeta(GroverInstance(n), points=args.points)
        print(f"{n:>3} {fit.zeta:>9.5f} {fit.zeta / ZETA_REFERENCE - 1:>+11.2%} {fit.alpha_max:>10.3g} {fit.residual:>9.1e}")


if __name__ == "__main__":
    main()
