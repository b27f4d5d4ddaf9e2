"""Grover search under total and local depolarizing noise: simulation, closed forms and costs."""

from .channels import (
    NoiseSpec,
    apply_ldch,
    apply_tdch,
    enumerate_kraus_paths,
    evolve,
)
from .config import CapacityError, SimulationLimits
from .costing import (
    MeanCostReport,
    alpha_classical_bound,
    fit_zeta,
    gamma_classical,
    mc_ldch,
    mc_tdch_at_kgr,
    mc_tdch_at_kmax,
    mean_cost,
)
from .curves import Curve
from .grover import GroverInstance, grover_operator, noiseless_probability, uniform_state
from .ldch import f1, first_order_probability, p1_exact, p1_large_n, probability_bounds
from .tdch import k_max_exact, k_max_large_gamma, k_max_small_gamma, p_hat_tdch

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "Curve",
    "GroverInstance",
    "MeanCostReport",
    "NoiseSpec",
    "SimulationLimits",
    "alpha_classical_bound",
    "apply_ldch",
    "apply_tdch",
    "enumerate_kraus_paths",
    "evolve",
    "f1",
    "first_order_probability",
    "fit_zeta",
    "gamma_classical",
    "grover_operator",
    "k_max_exact",
    "k_max_large_gamma",
    "k_max_small_gamma",
    "mc_ldch",
    "mc_tdch_at_kgr",
    "mc_tdch_at_kmax",
    "mean_cost",
    "noiseless_probability",
    "p1_exact",
    "p1_large_n",
    "p_hat_tdch",
    "probability_bounds",
    "uniform_state",
]
