#!/usr/bin/env python3
"""Mean cost against N for the total channel at fixed width, stopping at k_Gr and at k_max.

Prints the cost table and local log-log slopes over a sliding window of
qubit counts, showing where the k_Gr slope settles toward 1.5 and the k_max
slope toward 1.0.
"""

import argparse
import math

import numpy as np

from groverdep.costing import mc_tdch_at_kgr, mc_tdch_at_kmax
from groverdep.grover import GroverInstance


def slope(ns, costs):
    return float(np.polyfit(np.array(ns) * math.log(2), np.log(costs), 1)[0])


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--gamma", type=float, default=0.1)
    parser.add_argument("--n-min", type=int, default=6)
    parser.add_argument("--n-max", type=int, default=30)
    parser.add_argument("--window", type=int, default=7)
    args = parser.parse_args()

    ns = list(range(args.n_min, args.n_max + 1))
    at_gr = [mc_tdch_at_kgr(GroverInstance(n), args.gamma).mean_cost for n in ns]
    at_max = [mc_tdch_at_kmax(GroverInstance(n), args.gamma).mean_cost for n in ns]
    print(f"{'n':>3} {'MC(k_Gr)':>14} {'MC(k_max)':>14}")
    for n, a, b in zip(ns, at_gr, at_max):
        print(f"{n:>3} {a:>14.6g} {b:>14.6g}")
    print(f"\nlog-log slopes over windows of {args.window} qubit counts")
    for i in range(len(ns) - args.window + 1):
        sl = slice(i, i + args.window)
        print(f"n={ns[sl][0]:>2}..{ns[sl][-1]:>2}  k_Gr {slope(ns[sl], at_gr[sl]):.3f}  k_max {slope(ns[sl], at_max[sl]):.3f}")


if __name__ == "__main__":
    main()
