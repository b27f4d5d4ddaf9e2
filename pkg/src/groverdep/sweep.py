"""Parameter sweeps and figure presets, written as CSV files plus a JSON manifest.

Every CSV has the header ``<x>,<y>,source`` and floats are printed with 17
significant digits, so identical inputs give byte-identical files. Each file
is written to a temporary name and renamed into place.
"""

from __future__ import annotations

import json
import math
import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from . import svg
from .channels import MODELS, NoiseSpec, evolve
from .config import SimulationLimits, resolve_limits
from .costing import mc_ldch, mc_tdch
from .curves import Curve
from .grover import GroverInstance
from .ldch import f1, first_order_probability, gamma_lower, gamma_upper, probability_bounds
from .tdch import (
    argmax_k,
    k_max_exact,
    k_max_large_gamma,
    k_max_small_gamma,
    p_hat_tdch,
)

FORMULAS = {
    "p_hat_tdch": "tdch.p_hat_tdch: (1-gamma)^k sin^2((2k+1)theta) + (1-(1-gamma)^k)/N",
    "simulated": "channels.evolve: density-matrix simulation, Grover operator then channel each step",
    "bound-lower": "ldch.probability_bounds: p_hat_tdch at gamma_l = 1-(1-alpha)^n",
    "bound-upper-improved": "ldch.probability_bounds: p_hat_tdch at gamma_u = n alpha/(2 + n alpha)",
    "bound-upper-power": "ldch.probability_bounds: p_hat_tdch at gamma_u = alpha^n",
    "first-order": "ldch.first_order_probability: (1-3a/4)^(nk) p(k) + (1-3a/4)^(nk-1) (a/4) f1(n,k)",
    "argmax": "tdch.argmax_k: exhaustive argmax of p_hat_tdch over k in [1, 2 k_Gr]",
    "k_max_exact": "tdch.k_max_exact: max(floor(f(delta)/(4 theta)), 1)",
    "k_max_small_gamma": "tdch.k_max_small_gamma: floor(pi sqrt(N)/4 - N gamma/8)",
    "k_max_large_gamma": "tdch.k_max_large_gamma: max(floor(g(gamma)), 1)",
    "k_max_ratio": "tdch.k_max_exact / k_Gr",
}

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig6")
FORMATS = ("csv", "json", "svg")


class ConfigError(ValueError):
    """Invalid sweep configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# -- configuration -------------------------------------------------------------


@dataclass
class WidthGrid:
    """Noise widths, either listed explicitly or generated from a range."""

    values: list | None = None
    start: float | None = None
    stop: float | None = None
    count: int | None = None
    scale: str = "linear"

    @classmethod
    def default(cls) -> "WidthGrid":
        return cls(start=1e-4, stop=1.0, count=50, scale="log")

    @classmethod
    def parse(cls, spec: str) -> "WidthGrid":
        """``"0,0.01,0.1"``, ``"lin:0:1:25"`` or ``"log:1e-4:1:50"``."""
        spec = spec.strip()
        if spec.startswith(("lin:", "log:")):
            parts = spec.split(":")
            if len(parts) != 4:
                raise ConfigError("widths", f"range spec must be scale:start:stop:count, got {spec!r}")
            try:
                return cls(
                    start=float(parts[1]),
                    stop=float(parts[2]),
                    count=int(parts[3]),
                    scale="linear" if parts[0] == "lin" else "log",
                )
            except ValueError:
                raise ConfigError("widths", f"cannot parse range spec {spec!r}") from None
        try:
            values = [float(v) for v in spec.split(",") if v.strip()]
        except ValueError:
            raise ConfigError("widths", f"cannot parse width list {spec!r}") from None
        return cls(values=values)

    def resolve(self) -> np.ndarray:
        if self.values is not None:
            grid = np.array(self.values, dtype=float)
        else:
            if self.start is None or self.stop is None or self.count is None:
                raise ConfigError("widths", "a range grid needs start, stop and count")
            if self.count < 1:
                raise ConfigError("widths.count", "must be >= 1")
            if self.scale == "linear":
                grid = np.linspace(self.start, self.stop, self.count)
            elif self.scale == "log":
                if self.start <= 0:
                    raise ConfigError("widths.start", "log grid needs start > 0")
                # log-spaced interior points, plus both ends of [0, 1]
                grid = np.geomspace(self.start, self.stop, self.count)
                grid = np.unique(np.concatenate([[0.0], grid, [1.0]]))
            else:
                raise ConfigError("widths.scale", f"must be 'linear' or 'log', got {self.scale!r}")
        if grid.size == 0:
            raise ConfigError("widths", "width grid is empty")
        if np.any((grid < 0) | (grid > 1)) or not np.all(np.isfinite(grid)):
            raise ConfigError("widths", "all widths must lie in [0, 1]")
        return grid


@dataclass
class SweepConfig:
    model: str
    qubits: list
    widths: WidthGrid = field(default_factory=WidthGrid.default)
    stop: str = "kgr"
    formats: list = field(default_factory=lambda: ["csv"])
    out: str = "out"
    t: int = 0
    max_qubits: int | None = None
    simulate: str | None = None
    # reserved; every computation here is deterministic
    seed: int | None = None

    def validate(self) -> None:
        if self.model not in MODELS:
            raise ConfigError("model", f"must be one of {MODELS}, got {self.model!r}")
        if not self.qubits:
            raise ConfigError("qubits", "qubit list is empty")
        for n in self.qubits:
            if not isinstance(n, int) or n < 1:
                raise ConfigError("qubits", f"qubit counts must be integers >= 1, got {n!r}")
        self.widths.resolve()
        self.stop_step(GroverInstance(self.qubits[0]), 0.0)
        for fmt in self.formats:
            if fmt not in FORMATS:
                raise ConfigError("formats", f"unknown format {fmt!r}; choose from {FORMATS}")
        if self.simulate not in (None, "auto", "always", "never"):
            raise ConfigError("simulate", f"must be auto, always or never, got {self.simulate!r}")
        if self.max_qubits is not None and self.max_qubits < 1:
            raise ConfigError("max_qubits", "must be >= 1")
        if any(self.t >= 2**n or self.t < 0 for n in self.qubits):
            raise ConfigError("t", f"marked index {self.t} outside the register for some n")

    def stop_step(self, inst: GroverInstance, width: float) -> int:
        if self.stop == "kgr":
            return inst.k_gr
        if self.stop == "kmax":
            if self.model == "tdch":
                return k_max_exact(inst, width)
            # largest step the LDCh maximum can sit at
            return k_max_exact(inst, gamma_upper(inst.n, width))
        if self.stop.startswith("k="):
            try:
                k = int(self.stop[2:])
            except ValueError:
                raise ConfigError("stop", f"cannot parse step count in {self.stop!r}") from None
            if k < 0:
                raise ConfigError("stop", "fixed step must be >= 0")
            return k
        raise ConfigError("stop", f"must be kgr, kmax or k=<int>, got {self.stop!r}")

    def limits(self) -> SimulationLimits:
        if self.max_qubits is not None:
            return SimulationLimits(self.max_qubits, self.max_qubits)
        return resolve_limits(None)

    def simulate_mode(self) -> str:
        if self.simulate is not None:
            return self.simulate
        # the TDCh closed form is exact, so simulation is optional there
        return "always" if self.model == "ldch" else "auto"

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "SweepConfig":
        data = dict(data)
        known = set(cls.__dataclass_fields__)
        unknown = set(data) - known
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown configuration field")
        for required in ("model", "qubits"):
            if required not in data:
                raise ConfigError(required, "missing required field")
        widths = data.get("widths")
        if isinstance(widths, dict):
            try:
                data["widths"] = WidthGrid(**widths)
            except TypeError as exc:
                raise ConfigError("widths", str(exc)) from None
        elif isinstance(widths, list):
            data["widths"] = WidthGrid(values=widths)
        elif isinstance(widths, str):
            data["widths"] = WidthGrid.parse(widths)
        elif widths is None:
            data.pop("widths", None)
        else:
            raise ConfigError("widths", "must be a list, a range object or a grid spec string")
        return cls(**data)

    @classmethod
    def load(cls, path: str) -> "SweepConfig":
        return cls.from_dict(read_config_file(path))


def read_config_file(path: str) -> dict:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ConfigError("config", f"{path}: line {exc.lineno}: {exc.msg}") from None
    except OSError as exc:
        raise ConfigError("config", str(exc)) from None
    if not isinstance(data, dict):
        raise ConfigError("config", "top-level JSON value must be an object")
    return data


# -- output ----------------------------------------------------------------------


def _fmt(v) -> str:
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def curve_csv(curve: Curve) -> str:
    xs = curve.x.tolist()
    ys = curve.y.tolist()
    lines = [f"{curve.x_name},{curve.y_name},source"]
    lines += [f"{_fmt(x)},{_fmt(y)},{curve.source}" for x, y in zip(xs, ys)]
    return "\n".join(lines) + "\n"


def read_curve_csv(path: str) -> tuple:
    """Parse a CSV written by this module into (x_name, y_name, rows)."""
    with open(path) as fh:
        header = fh.readline().strip().split(",")
        rows = [line.strip().split(",") for line in fh if line.strip()]
    return header[0], header[1], [(float(a), float(b), s) for a, b, s in rows]


def atomic_write(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


class _Writer:
    """Collects curves, then writes files and the manifest from a single thread."""

    def __init__(self, out: str, formats):
        self.out = out
        self.formats = list(formats)
        self.entries = []
        self.json_curves = []

    def add(self, name: str, curve: Curve) -> None:
        entry = {
            "label": curve.label,
            "meta": _jsonable(curve.meta),
            "columns": {
                curve.x_name: "input grid",
                curve.y_name: curve.formula,
                "source": curve.source,
            },
        }
        if "csv" in self.formats:
            path = os.path.join(self.out, f"{name}.csv")
            atomic_write(path, curve_csv(curve))
            entry["path"] = f"{name}.csv"
        self.entries.append(entry)
        if "json" in self.formats:
            self.json_curves.append(
                {
                    "name": name,
                    "label": curve.label,
                    "meta": _jsonable(curve.meta),
                    "source": curve.source,
                    "formula": curve.formula,
                    curve.x_name: curve.x.tolist(),
                    curve.y_name: curve.y.tolist(),
                }
            )

    def add_svg(self, name: str, text: str) -> None:
        if "svg" in self.formats:
            atomic_write(os.path.join(self.out, f"{name}.svg"), text)

    def finish(self, header: dict, reports=None) -> str:
        manifest = dict(header)
        manifest["files"] = self.entries
        if "json" in self.formats:
            atomic_write(os.path.join(self.out, "curves.json"), dumps_json({"curves": self.json_curves}))
            manifest["curves_json"] = "curves.json"
        if reports is not None:
            atomic_write(os.path.join(self.out, "reports.json"), dumps_json({"reports": reports}))
            manifest["reports_json"] = "reports.json"
        path = os.path.join(self.out, "manifest.json")
        atomic_write(path, dumps_json(manifest))
        return path


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


def dumps_json(obj) -> str:
    return json.dumps(_jsonable(obj), indent=2, sort_keys=True) + "\n"


def _parallel_map(fn, items):
    items = list(items)
    if len(items) <= 1:
        return [fn(i) for i in items]
    with ThreadPoolExecutor(max_workers=min(8, os.cpu_count() or 1)) as pool:
        return list(pool.map(fn, items))


# -- sweeps ----------------------------------------------------------------------


def _analytic_curve(inst, ks, gamma, **meta) -> Curve:
    return Curve(
        x=ks,
        y=p_hat_tdch(inst, ks, gamma),
        source="analytic",
        formula=FORMULAS["p_hat_tdch"],
        meta={"n": inst.n, "t": inst.t, "model": "tdch", "width": gamma, **meta},
    )


def _sweep_point(config: SweepConfig, limits: SimulationLimits, n: int, width: float):
    inst = GroverInstance(n, config.t)
    k_stop = config.stop_step(inst, width)
    ks = np.arange(k_stop + 1)
    meta = {"n": n, "t": config.t, "model": config.model, "width": width, "stop": k_stop}
    mode = config.simulate_mode()
    simulate = mode == "always" or (mode == "auto" and n <= limits.limit_for(config.model))
    curves = []
    if config.model == "tdch":
        curves.append(("analytic", _analytic_curve(inst, ks, width, stop=k_stop)))
        if simulate:
            curves.append(("simulated", evolve(inst, NoiseSpec.tdch(width), k_stop, limits)))
        rule = {"kgr": "at_k_gr", "kmax": "at_k_max"}.get(config.stop, "at_fixed_k")
        report = mc_tdch(inst, width, rule, k_stop) if k_stop >= 1 else None
    else:
        if simulate:
            curves.append(("simulated", evolve(inst, NoiseSpec.ldch(width), k_stop, limits)))
        lower, upper = probability_bounds(inst, ks, width)
        curves.append(("bound-lower", Curve(ks, lower, "bound-lower", formula=FORMULAS["bound-lower"], meta=meta)))
        curves.append(("bound-upper", Curve(ks, upper, "bound-upper", formula=FORMULAS["bound-upper-improved"], meta=meta)))
        fo = [first_order_probability(inst, int(k), width) for k in ks]
        curves.append(("first-order", Curve(ks, fo, "first-order", formula=FORMULAS["first-order"], meta=meta)))
        rule = {"kgr": "at_k_gr", "kmax": "at_k_max"}.get(config.stop, "at_fixed_k")
        report = None
        if width < 1.0 and k_stop >= 1:
            report = mc_ldch(inst, width, rule, k_stop, limits, simulate=simulate)
    for _, c in curves:
        c.meta = dict(meta)
        c.label = c.label or f"{config.model} n={n} width={width:.6g} ({c.source})"
    return n, width, curves, report


def run_sweep(config: SweepConfig) -> str:
    """Evaluate every (qubits, width) point and write curves plus manifest.

    Returns the manifest path. Raises :class:`ConfigError` on an invalid
    config and :class:`~groverdep.config.CapacityError` when a required
    simulation exceeds the qubit limit.
    """
    config.validate()
    limits = config.limits()
    widths = config.widths.resolve()
    if config.simulate_mode() == "always":
        for n in config.qubits:
            limits.check(n, config.model)
    points = [(n, float(w)) for n in config.qubits for w in widths]
    results = _parallel_map(lambda p: _sweep_point(config, limits, *p), points)

    writer = _Writer(config.out, config.formats)
    reports = []
    for idx, (n, width, curves, report) in enumerate(results):
        w_idx = idx % len(widths)
        for tag, curve in curves:
            writer.add(f"{config.model}_n{n:02d}_w{w_idx:03d}_{tag}", curve)
        if report is not None:
            reports.append(report.to_dict())
    for n in config.qubits:
        series = [
            (f"w={w:.3g} {tag}", c.x, c.y)
            for rn, w, curves, _ in results
            if rn == n
            for tag, c in curves
        ]
        writer.add_svg(
            f"{config.model}_n{n:02d}",
            svg.line_plot(series, title=f"{config.model.upper()} n={n}", x_label="k", y_label="probability"),
        )
    header = {"kind": "sweep", "config": config.to_dict(), "widths": widths.tolist()}
    return writer.finish(header, reports)


# -- figure presets ----------------------------------------------------------------


def figure_curves(fig_id: str) -> list:
    """Named curves of one figure preset, as a list of (file stem, Curve)."""
    builders = {
        "fig1": _fig1,
        "fig2": _fig2,
        "fig3": _fig3,
        "fig4": _fig4,
        "fig6": _fig6,
    }
    if fig_id not in builders:
        raise ConfigError("id", f"unknown figure {fig_id!r}; choose from {FIGURES}")
    return builders[fig_id]()


def _fig1():
    inst = GroverInstance(10)
    root_n = math.sqrt(inst.N)
    gammas = [0.0, 1 / (4 * root_n), 1 / root_n, 4 / root_n, 1.0]
    ks = np.arange(61)
    out = []
    for letter, g in zip("ABCDE", gammas):
        c = _analytic_curve(inst, ks, g)
        c.label = f"({letter}) gamma={g:.4g}"
        out.append((f"fig1_{letter}_analytic", c))
    return out


def _fig2():
    out = []
    for letter, n in zip("ABCD", (10, 12, 14, 16)):
        inst = GroverInstance(n)
        c = _analytic_curve(inst, np.arange(2 * inst.k_gr + 1), 0.01, k_gr=inst.k_gr)
        c.label = f"({letter}) n={n}"
        out.append((f"fig2_{letter}_analytic", c))
    return out


FIG3_QUBITS = tuple(range(6, 15))
FIG3_GAMMAS = np.linspace(0.0, 1.0, 25)


def _fig3():
    out = []
    for n in FIG3_QUBITS:
        inst = GroverInstance(n)
        ratio = [k_max_exact(inst, g) / inst.k_gr for g in FIG3_GAMMAS]
        out.append(
            (
                f"fig3_n{n:02d}",
                Curve(
                    FIG3_GAMMAS,
                    ratio,
                    "analytic",
                    x_name="gamma",
                    y_name="k_max_over_k_gr",
                    label=f"n={n}",
                    formula=FORMULAS["k_max_ratio"],
                    meta={"n": n, "k_gr": inst.k_gr},
                ),
            )
        )
    return out


FIG4_GAMMAS = np.linspace(0.0, 1.0, 50)


def _fig4():
    inst = GroverInstance(10)
    g = FIG4_GAMMAS
    g_pos = g[g > 0]
    meta = {"n": 10, "k_gr": inst.k_gr}

    def kc(x, y, source, letter, formula):
        return Curve(
            x, np.asarray(y, dtype=int), source, x_name="gamma", y_name="k_max",
            label=f"({letter})", formula=FORMULAS[formula], meta=meta,
        )

    return [
        ("fig4_A_grid-argmax", kc(g, [argmax_k(inst, x) for x in g], "grid-argmax", "A", "argmax")),
        ("fig4_B_analytic", kc(g, [k_max_exact(inst, x) for x in g], "analytic", "B", "k_max_exact")),
        ("fig4_C_analytic", kc(g, [k_max_small_gamma(inst, x) for x in g], "analytic", "C", "k_max_small_gamma")),
        ("fig4_D_analytic", kc(g_pos, [k_max_large_gamma(x) for x in g_pos], "analytic", "D", "k_max_large_gamma")),
    ]


FIG6_ALPHAS = np.linspace(0.0, 1.0, 40)


def _fig6():
    inst = GroverInstance(8)
    k = inst.k_gr
    a = FIG6_ALPHAS
    f1_value = f1(inst, k)
    sim = _parallel_map(lambda x: float(evolve(inst, NoiseSpec.ldch(float(x)), k).y[k]), a)
    meta = {"n": 8, "k": k}

    def pc(y, source, letter, formula):
        return Curve(
            a, np.clip(y, 0.0, 1.0), source, x_name="alpha", label=f"({letter})",
            formula=FORMULAS[formula], meta=meta,
        )

    return [
        ("fig6_A_simulated", pc(sim, "simulated", "A", "simulated")),
        ("fig6_B_first-order", pc([first_order_probability(inst, k, x, f1_value) for x in a], "first-order", "B", "first-order")),
        ("fig6_C_bound-lower", pc([p_hat_tdch(inst, k, gamma_lower(8, x)) for x in a], "bound-lower", "C", "bound-lower")),
        ("fig6_D_bound-upper", pc([p_hat_tdch(inst, k, gamma_upper(8, x)) for x in a], "bound-upper", "D", "bound-upper-improved")),
        ("fig6_E_bound-upper", pc([p_hat_tdch(inst, k, gamma_upper(8, x, "power")) for x in a], "bound-upper", "E", "bound-upper-power")),
    ]


_FIG_AXES = {
    "fig1": ("k", "probability", False),
    "fig2": ("k / k_Gr", "probability", False),
    "fig3": ("gamma", "k_max / k_Gr", False),
    "fig4": ("gamma", "k_max / k_Gr", False),
    "fig6": ("alpha", "probability", False),
}


def reproduce_figure(fig_id: str, out: str, formats=("csv",)) -> str:
    """Write the CSVs (and optionally an SVG) of one figure preset; returns the manifest path."""
    curves = figure_curves(fig_id)
    writer = _Writer(out, formats)
    for name, curve in curves:
        writer.add(name, curve)
    x_label, y_label, log_x = _FIG_AXES[fig_id]
    series = []
    for _, c in curves:
        x, y = c.x, c.y
        if fig_id == "fig2":
            x = x / c.meta["k_gr"]
        if fig_id == "fig4":
            y = y / c.meta["k_gr"]
        series.append((c.label, x, y))
    writer.add_svg(fig_id, svg.line_plot(series, title=fig_id, x_label=x_label, y_label=y_label, log_x=log_x))
    return writer.finish({"kind": "figure", "id": fig_id})
