#!/usr/bin/env python3
"""Write every figure preset (CSV, SVG and a manifest per figure) under one directory."""

import argparse
import os
import time

from groverdep.sweep import FIGURES, reproduce_figure


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="figures")
    parser.add_argument("--only", nargs="*", choices=FIGURES, help="subset of figure ids")
    args = parser.parse_args()
    for fig_id in args.only or FIGURES:
        start = time.perf_counter()
        manifest = reproduce_figure(fig_id, os.path.join(args.out, fig_id), ["csv", "svg"])
        print(f"{fig_id}: {manifest} ({time.perf_counter() - start:.1f} s)")


if __name__ == "__main__":
    main()
