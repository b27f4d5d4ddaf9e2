#!/usr/bin/env python3
"""Scan LDCh probability bounds against density-matrix simulation.

For every n, every k <= k_Gr and a width grid, counts violations of the
proven sandwich, of the first-order lower bound, of the improved upper bound,
and of the ordering between the worst-case lower bound and the first-order
expansion.
"""

import argparse

import numpy as np

from groverdep.channels import NoiseSpec, evolve
from groverdep.grover import GroverInstance
from groverdep.ldch import f1, first_order_probability, probability_bounds

TOL = 1e-12


def scan(n, alphas):
    inst = GroverInstance(n)
    ks = np.arange(1, inst.k_gr + 1)
    f1_values = {int(k): f1(inst, int(k)) for k in ks}
    counts = dict(proven=0, first_order=0, improved=0, lower_vs_first=0, total=0)
    first_lower_alpha = None
    for alpha in alphas:
        sim = evolve(inst, NoiseSpec.ldch(alpha), inst.k_gr).probability[1:]
        lower, power = probability_bounds(inst, ks, alpha, "power")
        _, improved = probability_bounds(inst, ks, alpha)
        first = np.array([first_order_probability(inst, int(k), alpha, f1_values[int(k)]) for k in ks])
        counts["total"] += len(ks)
        counts["proven"] += int(np.sum((lower > sim + TOL) | (sim > power + TOL)))
        counts["first_order"] += int(np.sum(first > sim + TOL))
        counts["improved"] += int(np.sum(sim > improved + TOL))
        bad = int(np.sum(lower > first + TOL))
        counts["lower_vs_first"] += bad
        if bad and first_lower_alpha is None:
            first_lower_alpha = alpha
    return counts, first_lower_alpha


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, nargs="+", default=list(range(2, 9)))
    parser.add_argument("--points", type=int, default=41)
    args = parser.parse_args()
    alphas = np.linspace(0, 1, args.points)
    for n in args.n:
        counts, alpha0 = scan(n, alphas)
        note = f", lower > first-order from alpha={alpha0:.3f}" if alpha0 is not None else ""
        print(f"n={n}: {counts}{note}")


if __name__ == "__main__":
    main()
