"""Command-line entry point: ``sweep``, ``figure`` and ``cost`` subcommands.

Exit codes: 0 on success, 2 for configuration errors, 3 when a requested
simulation exceeds the qubit capacity.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import CapacityError
from .costing import mc_ldch, mc_tdch
from .grover import GroverInstance
from .sweep import (
    FIGURES,
    FORMATS,
    ConfigError,
    SweepConfig,
    WidthGrid,
    dumps_json,
    read_config_file,
    reproduce_figure,
    run_sweep,
)

EXIT_CONFIG = 2
EXIT_CAPACITY = 3

_STOP_RULES = {"kgr": "at_k_gr", "kmax": "at_k_max"}


def _parse_qubits(text: str) -> list:
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            if "-" in part:
                lo, hi = part.split("-")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise ConfigError("qubits", f"cannot parse qubit list {text!r}") from None
    return out


def _parse_formats(values) -> list:
    out = []
    for v in values or ["csv"]:
        out.extend(f.strip() for f in v.split(",") if f.strip())
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="groverdep", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    sw = sub.add_parser("sweep", help="sweep noise widths and qubit counts")
    sw.add_argument("--config", help="JSON config file; its fields override the flags")
    sw.add_argument("--model", choices=("tdch", "ldch"))
    sw.add_argument("--qubits", help="comma list and/or ranges, e.g. 6,8,10-12")
    sw.add_argument("--width", help="'0,0.01,0.1', 'lin:0:1:25' or 'log:1e-4:1:50'")
    sw.add_argument("--stop", default="kgr", help="kgr, kmax or k=<int>")
    sw.add_argument("--out", default="out")
    sw.add_argument("--format", action="append", help=f"any of {', '.join(FORMATS)} (repeatable or comma list)")
    sw.add_argument("--simulate", choices=("auto", "always", "never"))
    sw.add_argument("--max-qubits", type=int, help="override the simulation qubit limit")
    sw.add_argument("--t", type=int, default=0, help="marked basis index")

    fg = sub.add_parser("figure", help="reproduce one figure preset")
    fg.add_argument("--id", required=True, choices=FIGURES)
    fg.add_argument("--out", default="out")
    fg.add_argument("--format", action="append", help="csv and/or svg")

    co = sub.add_parser("cost", help="mean-cost reports as JSON")
    co.add_argument("--model", required=True, choices=("tdch", "ldch"))
    co.add_argument("--qubits", required=True)
    co.add_argument("--width", required=True)
    co.add_argument("--stop", default="kgr", help="kgr, kmax or k=<int>")
    co.add_argument("--out", help="write the JSON here instead of stdout")
    return parser


def _sweep_config(args) -> SweepConfig:
    data = {
        "stop": args.stop,
        "out": args.out,
        "formats": _parse_formats(args.format),
        "simulate": args.simulate,
        "max_qubits": args.max_qubits,
        "t": args.t,
    }
    if args.model is not None:
        data["model"] = args.model
    if args.qubits is not None:
        data["qubits"] = _parse_qubits(args.qubits)
    if args.width is not None:
        data["widths"] = args.width
    if args.config:
        data.update(read_config_file(args.config))
    return SweepConfig.from_dict(data)


def _cost(args) -> str:
    qubits = _parse_qubits(args.qubits)
    if not qubits:
        raise ConfigError("qubits", "qubit list is empty")
    widths = WidthGrid.parse(args.width).resolve()
    if args.stop in _STOP_RULES:
        rule, k = _STOP_RULES[args.stop], None
    elif args.stop.startswith("k="):
        try:
            rule, k = "at_fixed_k", int(args.stop[2:])
        except ValueError:
            raise ConfigError("stop", f"cannot parse {args.stop!r}") from None
    else:
        raise ConfigError("stop", f"must be kgr, kmax or k=<int>, got {args.stop!r}")
    reports = []
    for n in qubits:
        if n < 1:
            raise ConfigError("qubits", "qubit counts must be >= 1")
        inst = GroverInstance(n)
        for w in widths:
            w = float(w)
            if args.model == "tdch":
                reports.append(mc_tdch(inst, w, rule, k).to_dict())
            else:
                if w >= 1.0:
                    raise ConfigError("width", "LDCh mean cost needs alpha < 1")
                reports.append(mc_ldch(inst, w, rule, k).to_dict())
    return dumps_json({"reports": reports})


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "sweep":
            path = run_sweep(_sweep_config(args))
            print(path)
        elif args.command == "figure":
            path = reproduce_figure(args.id, args.out, _parse_formats(args.format))
            print(path)
        else:
            text = _cost(args)
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(text)
            else:
                sys.stdout.write(text)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    return 0


if __name__ == "__main__":
    sys.exit(main())
