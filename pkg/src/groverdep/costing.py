"""Expected oracle-query cost of noisy Grover search with restart-until-success.

One Grover step is one oracle query. Stopping at step k and restarting on
failure costs k / p on average, where p is the success probability at k. The
classical brute-force reference cost is N/2.
"""

from __future__ import annotations

import logging
import math
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import brentq

from .channels import NoiseSpec, evolve
from .config import SimulationLimits, resolve_limits
from .grover import GroverInstance, noiseless_probability
from .ldch import f1, first_order_probability, gamma_lower, gamma_upper, p1_exact
from .tdch import k_max_exact, k_max_large_gamma, p_hat_tdch

log = logging.getLogger(__name__)

STOP_RULES = ("at_k_gr", "at_k_max", "at_fixed_k")
ZETA_REFERENCE = 70 / 2048

# "x << 1" regime flags are taken as x < SMALL
SMALL = 0.1


class InfiniteCostError(ArithmeticError):
    """Success probability is zero, so the expected cost diverges."""


def mean_cost(k: int, p: float) -> float:
    """Expected number of oracle queries k / p."""
    if k < 1:
        raise ValueError("mean cost needs k >= 1")
    if p == 0:
        raise InfiniteCostError(f"success probability is 0 at k={k}; cost is infinite")
    if not 0.0 < p <= 1.0:
        raise ValueError(f"probability must lie in (0, 1], got {p!r}")
    return k / p


@dataclass
class MeanCostReport:
    stop_rule: str
    k_used: int
    probability: float | None
    mean_cost: float | None
    bounds: tuple | None = None
    model: str = ""
    width: float = 0.0
    n: int = 0
    k_bounds: tuple | None = None
    asymptotic: dict = field(default_factory=dict)
    zeta: dict | None = None
    source: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def _resolve_k(inst, stop_rule, k, k_max_fn):
    if stop_rule == "at_k_gr":
        return inst.k_gr
    if stop_rule == "at_k_max":
        return k_max_fn()
    if stop_rule == "at_fixed_k":
        if k is None or k < 1:
            raise ValueError("at_fixed_k needs an explicit k >= 1")
        return k
    raise ValueError(f"stop rule must be one of {STOP_RULES}, got {stop_rule!r}")


def _tdch_asymptotics(inst: GroverInstance, gamma: float, stop_rule: str) -> dict:
    if gamma >= 1.0:
        return {}
    N = inst.N
    k_cont = math.pi * math.sqrt(N) / 4
    out = {}
    if stop_rule == "at_k_gr":
        survive = (1 - gamma) ** k_cont
        out["large_n"] = k_cont / (survive + (1 - survive) / N)
        if k_cont * gamma < SMALL:
            out["small_gamma"] = k_cont * (1 + k_cont * gamma)
    elif stop_rule == "at_k_max":
        if math.sqrt(N) * gamma / (2 * math.pi) < SMALL:
            out["small_gamma"] = k_cont * (1 + k_cont * gamma * (1 - 2 / math.pi**2))
        if gamma > 0 and k_max_large_gamma(gamma) == 1:
            # stopping after one step: p ~ (9 - 8 gamma)/N
            out["fixed_gamma"] = N / (9 - 8 * gamma)
    return out


def mc_tdch(inst: GroverInstance, gamma: float, stop_rule: str = "at_k_gr", k: int | None = None) -> MeanCostReport:
    """Exact TDCh mean cost at the chosen stop step, plus large-N forms where valid.

    At gamma = 1 only the exact value (k / (1/N)) is reported.
    """
    k_used = _resolve_k(inst, stop_rule, k, lambda: k_max_exact(inst, gamma))
    p = p_hat_tdch(inst, k_used, gamma)
    return MeanCostReport(
        stop_rule=stop_rule,
        k_used=k_used,
        probability=p,
        mean_cost=mean_cost(k_used, p),
        model="tdch",
        width=gamma,
        n=inst.n,
        asymptotic=_tdch_asymptotics(inst, gamma, stop_rule),
        source="analytic",
    )


def mc_tdch_at_kgr(inst: GroverInstance, gamma: float) -> MeanCostReport:
    return mc_tdch(inst, gamma, "at_k_gr")


def mc_tdch_at_kmax(inst: GroverInstance, gamma: float) -> MeanCostReport:
    return mc_tdch(inst, gamma, "at_k_max")


def gamma_classical(inst: GroverInstance, mode: str = "exact") -> float:
    """Largest TDCh width for which stopping at k_Gr still costs about N/2."""
    if inst.n < 4:
        raise ValueError("classical threshold needs n >= 4")
    N = inst.N
    if mode == "exact":
        k = inst.k_gr
        return 1.0 - ((2 * k - 1) / (N - 1)) ** (1.0 / k)
    if mode == "asymptotic":
        return 4 * math.log(2 * math.sqrt(N) / math.pi) / (math.pi * math.sqrt(N))
    raise ValueError(f"mode must be 'exact' or 'asymptotic', got {mode!r}")


@dataclass(frozen=True)
class ZetaFit:
    """Linear coefficient of the small-alpha LDCh cost at k_Gr.

    The cost is fitted as MC(alpha) ~ c0 + c1 alpha and reported as
    zeta = c1 / (N pi**2 log2 N).
    """

    zeta: float
    residual: float
    alpha_max: float
    points: int


def fit_zeta(inst: GroverInstance, points: int = 11, alpha_max: float | None = None) -> ZetaFit:
    """Fit zeta from the first-order probability at k_Gr over small alpha.

    The default range keeps alpha * k_Gr * log2 N at most 0.01. A quadratic
    is fitted so that curvature does not leak into the slope; the residual
    is the largest fit error relative to the cost.
    """
    k = inst.k_gr
    n = inst.n
    if alpha_max is None:
        alpha_max = 0.01 / (k * n)
    f1_value = f1(inst, k)
    alphas = np.linspace(0.0, alpha_max, points)
    costs = np.array([k / first_order_probability(inst, k, a, f1_value) for a in alphas])
    coeffs = np.polyfit(alphas, costs, 2)
    residual = float(np.max(np.abs(np.polyval(coeffs, alphas) - costs) / costs))
    zeta = coeffs[1] / (inst.N * math.pi**2 * n)
    return ZetaFit(zeta=float(zeta), residual=residual, alpha_max=alpha_max, points=points)


def _simulated_kmax(curve) -> int:
    probs = curve.y[1:]
    return int(np.argmax(probs)) + 1


def mc_ldch(
    inst: GroverInstance,
    alpha: float,
    stop_rule: str = "at_k_gr",
    k: int | None = None,
    limits: SimulationLimits | None = None,
    simulate: bool = True,
) -> MeanCostReport:
    """LDCh mean cost with bounds from the equivalent total-channel widths.

    At a fixed step the bounds are MC(k, gamma_u) <= MC <= MC(k, gamma_l).
    Stopping at the maximum uses k_max(gamma_l) <= k <= k_max(gamma_u) and
    the bound pair MC(k_max(gamma_l), gamma_u), MC(k_max(gamma_u), gamma_l).
    The point estimate comes from density-matrix simulation when ``n`` is
    within capacity, or from the exact one-step formula once both step
    bounds collapse to 1; otherwise it is left as ``None``.
    """
    if not 0.0 <= alpha < 1.0:
        raise ValueError(f"alpha must lie in [0, 1), got {alpha!r}")
    g_l = gamma_lower(inst.n, alpha)
    g_u = gamma_upper(inst.n, alpha, "improved")
    k_bounds = None
    if stop_rule == "at_k_max":
        k_lo, k_hi = k_max_exact(inst, g_l), k_max_exact(inst, g_u)
        k_bounds = (k_lo, k_hi)
        bounds = (
            mean_cost(k_lo, p_hat_tdch(inst, k_lo, g_u)),
            mean_cost(k_hi, p_hat_tdch(inst, k_hi, g_l)),
        )
    else:
        k_fixed = _resolve_k(inst, stop_rule, k, None)
        bounds = (
            mean_cost(k_fixed, p_hat_tdch(inst, k_fixed, g_u)),
            mean_cost(k_fixed, p_hat_tdch(inst, k_fixed, g_l)),
        )

    can_simulate = simulate and inst.n <= resolve_limits(limits).max_qubits_ldch
    k_used, p, source = None, None, "bounds-only"
    if stop_rule == "at_k_max":
        if can_simulate:
            curve = evolve(inst, NoiseSpec.ldch(alpha), max(2 * inst.k_gr, k_bounds[1]), limits)
            k_used = _simulated_kmax(curve)
            p, source = float(curve.y[k_used]), "simulated"
        elif k_bounds == (1, 1):
            k_used = 1
        if k_used == 1:
            p, source = p1_exact(inst, alpha), "analytic"
    else:
        k_used = k_fixed
        if k_used == 1:
            p, source = p1_exact(inst, alpha), "analytic"
        elif can_simulate:
            curve = evolve(inst, NoiseSpec.ldch(alpha), k_used, limits)
            p, source = float(curve.y[k_used]), "simulated"

    zeta = None
    if stop_rule == "at_k_gr":
        fit = fit_zeta(inst)
        zeta = {"fitted": fit.zeta, "residual": fit.residual, "reference": ZETA_REFERENCE}

    return MeanCostReport(
        stop_rule=stop_rule,
        k_used=k_used if k_used is not None else -1,
        probability=p,
        mean_cost=None if p is None else mean_cost(k_used, p),
        bounds=bounds,
        model="ldch",
        width=alpha,
        n=inst.n,
        k_bounds=k_bounds,
        zeta=zeta,
        source=source,
    )


def alpha_classical_bound(n: int) -> float:
    """Worst-case LDCh width still matching classical cost: 14 / log2 N, clamped to 1."""
    if n < 2:
        raise ValueError("alpha_classical bound needs n >= 2")
    value = 14.0 / n
    if value >= 1.0:
        log.warning("alpha_classical bound 14/%d saturates the valid range; clamped to 1", n)
        return 1.0
    return value


def alpha_classical_measured(
    inst: GroverInstance, limits: SimulationLimits | None = None, xtol: float = 1e-6
) -> float:
    """LDCh width at which the simulated cost at the probability maximum reaches N/2."""
    target = inst.N / 2

    def excess(alpha):
        curve = evolve(inst, NoiseSpec.ldch(alpha), 2 * inst.k_gr, limits)
        k = _simulated_kmax(curve)
        return mean_cost(k, float(curve.y[k])) - target

    hi = 1.0 - 1e-9
    if excess(hi) <= 0:
        return 1.0
    return float(brentq(excess, 0.0, hi, xtol=xtol))


def noiseless_cost(inst: GroverInstance) -> float:
    return mean_cost(inst.k_gr, noiseless_probability(inst, inst.k_gr))
