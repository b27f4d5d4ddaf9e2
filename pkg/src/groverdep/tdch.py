"""Closed forms for Grover search under the total depolarizing channel.

Because the total channel commutes with every unitary, k noisy steps leave
(1-gamma)**k of the noiseless pure state and spread the rest uniformly.
The functions here evaluate that probability and the step at which it first
peaks, together with the small- and large-gamma approximations of that step.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grover import GroverInstance, noiseless_probability

# Guard added before flooring so that 24.999999999999996 is read as 25.
FLOOR_GUARD = 1e-12


def _guarded_floor(x: float) -> int:
    return math.floor(x + FLOOR_GUARD)


def _check_width(gamma):
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma!r}")


def p_hat_tdch(inst: GroverInstance, k, gamma: float):
    """Success probability (1-g)**k p(k) + (1 - (1-g)**k)/N; vectorised over ``k``."""
    _check_width(gamma)
    k_arr = np.asarray(k)
    survive = (1.0 - gamma) ** k_arr
    out = survive * noiseless_probability(inst, k_arr) + (1.0 - survive) / inst.N
    return float(out) if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class KmaxDerivation:
    """Intermediate quantities of the closed-form maximiser of ``p_hat_tdch``.

    ``x = (2k+1) theta`` is the rotation angle at the stationary point,
    ``phi = arcsin(delta)`` and ``z = delta / N`` are the constants of the
    reduced stationarity equation ``-z = sin(x) cos(x + phi)``.
    """

    gamma: float
    delta: float
    f_delta: float
    x: float
    z: float
    phi: float
    stationary_k: float
    k_max: int


def _delta(theta: float, gamma: float) -> float:
    if gamma == 0.0:
        return 0.0
    if gamma == 1.0:
        return 1.0
    log = math.log1p(-gamma)
    return 1.0 / math.sqrt(1.0 + (4.0 * theta / log) ** 2)


def kmax_derivation(inst: GroverInstance, gamma: float) -> KmaxDerivation:
    _check_width(gamma)
    theta, N = inst.theta, inst.N
    delta = _delta(theta, gamma)
    f_delta = math.pi - math.asin(delta) - math.asin((1.0 - 2.0 / N) * delta)
    phi = math.asin(delta)
    z = delta / N
    # first member (m = 0) of the second solution family
    x = 0.5 * (math.pi + math.asin(2.0 * z - math.sin(phi)) - phi)
    stationary_k = (f_delta - 2.0 * theta) / (4.0 * theta)
    k_max = max(_guarded_floor(f_delta / (4.0 * theta)), 1)
    return KmaxDerivation(gamma, delta, f_delta, x, z, phi, stationary_k, k_max)


def k_max_exact(inst: GroverInstance, gamma: float) -> int:
    """Closed-form step of maximum success probability, max(floor(f(delta)/(4 theta)), 1).

    At gamma = 0 this is the noiseless limit floor(pi / (4 theta)), which may
    exceed ``inst.k_gr`` by one.
    """
    return kmax_derivation(inst, gamma).k_max


def k_max_continuous(inst: GroverInstance, gamma: float) -> float:
    """Real-valued stationary point of ``p_hat_tdch`` in k (not floored)."""
    return kmax_derivation(inst, gamma).stationary_k


def stationarity_residual(inst: GroverInstance, gamma: float, k: float) -> float:
    """Left-hand side of the zero-derivative condition at real ``k``.

    4 theta sin(x) cos(x) + (sin(x)**2 - 1/N) ln(1 - gamma), x = (2k+1) theta.
    """
    x = (2.0 * k + 1.0) * inst.theta
    return 4.0 * inst.theta * math.sin(x) * math.cos(x) + (
        math.sin(x) ** 2 - 1.0 / inst.N
    ) * math.log1p(-gamma)


def k_max_small_gamma(inst: GroverInstance, gamma: float) -> int:
    """floor(pi sqrt(N)/4 - N gamma/8), at least 1.

    Only accurate for gamma well below 2 pi / sqrt(N); no check is made.
    """
    _check_width(gamma)
    return max(_guarded_floor(math.pi * math.sqrt(inst.N) / 4 - inst.N * gamma / 8), 1)


def g_large_gamma(gamma: float) -> float:
    log = math.log1p(-gamma)
    return -1.0 / log + 0.5 * math.sqrt(1.0 + 4.0 / log**2)


def k_max_large_gamma(gamma: float) -> int:
    """max(floor(g(gamma)), 1); independent of N.

    Meant for gamma well above 8 / (pi sqrt(N)). Undefined at gamma = 0.
    """
    _check_width(gamma)
    if gamma == 0.0:
        raise ValueError("large-gamma approximation is singular at gamma = 0")
    if gamma == 1.0:
        return 1
    return max(_guarded_floor(g_large_gamma(gamma)), 1)


def argmax_k(inst: GroverInstance, gamma: float, k_stop: int | None = None) -> int:
    """Exhaustive argmax of ``p_hat_tdch`` over k in [1, k_stop]; ties go to the smallest k.

    ``k_stop`` defaults to 2 k_Gr.
    """
    k_stop = 2 * inst.k_gr if k_stop is None else k_stop
    ks = np.arange(1, max(k_stop, 1) + 1)
    return int(ks[np.argmax(p_hat_tdch(inst, ks, gamma))])
