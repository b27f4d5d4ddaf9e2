"""Noiseless Grover search: instance parameters, operators and success probability."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import SimulationLimits, resolve_limits


@dataclass(frozen=True)
class GroverInstance:
    """Search over N = 2**n basis states for the single marked index ``t``."""

    n: int
    t: int = 0

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise ValueError(f"qubit count must be an integer >= 1, got {self.n!r}")
        if not 0 <= self.t < 2**self.n:
            raise ValueError(f"marked index t={self.t} outside [0, {2**self.n - 1}]")

    @property
    def N(self) -> int:
        return 2**self.n

    @cached_property
    def theta(self) -> float:
        return math.asin(1.0 / math.sqrt(self.N))

    @cached_property
    def k_gr(self) -> int:
        """The noiseless step count floor(pi/4 * sqrt(N))."""
        return math.floor(math.pi / 4 * math.sqrt(self.N))


def _check_capacity(inst: GroverInstance, limits: SimulationLimits | None) -> None:
    # plain unitary work is bounded by the larger (dense TDCh) limit
    resolve_limits(limits).check(inst.n, "tdch")


def uniform_vector(inst: GroverInstance) -> np.ndarray:
    return np.full(inst.N, 1.0 / math.sqrt(inst.N))


def uniform_state(inst: GroverInstance, limits: SimulationLimits | None = None) -> np.ndarray:
    """Density matrix |s><s| of the uniform superposition; every entry is 1/N."""
    _check_capacity(inst, limits)
    return np.full((inst.N, inst.N), 1.0 / inst.N)


def oracle_operator(inst: GroverInstance) -> np.ndarray:
    o = -np.eye(inst.N)
    o[inst.t, inst.t] = 1.0
    return o


def diffusion_operator(inst: GroverInstance) -> np.ndarray:
    return np.full((inst.N, inst.N), 2.0 / inst.N) - np.eye(inst.N)


def grover_operator(inst: GroverInstance, limits: SimulationLimits | None = None) -> np.ndarray:
    """Dense G = D O, with O = 2|t><t| - I and D = 2|s><s| - I."""
    _check_capacity(inst, limits)
    return diffusion_operator(inst) @ oracle_operator(inst)


def apply_grover_vector(psi: np.ndarray, t: int) -> np.ndarray:
    """G applied to a state vector (or to each row of a 2-D stack of them)."""
    out = -np.array(psi, copy=True)
    out[..., t] *= -1
    # D v = 2 <s|v> |s> - v
    return 2.0 * out.mean(axis=-1, keepdims=True) - out


def apply_grover(rho: np.ndarray, t: int) -> np.ndarray:
    """G rho G^dagger without materialising G.

    The oracle conjugation flips the sign of row and column ``t``; the
    diffusion conjugation is a rank-one update built from row/column sums.
    """
    N = rho.shape[0]
    out = np.array(rho, copy=True)
    out[t, :] *= -1
    out[:, t] *= -1
    col = out.sum(axis=0)
    row = out.sum(axis=1)
    total = col.sum()
    out -= (2.0 / N) * (col[None, :] + row[:, None])
    out += 4.0 * total / N**2
    return out


def noiseless_probability(inst: GroverInstance, k):
    """Success probability sin^2((2k+1) theta) after ``k`` noiseless steps.

    Accepts a scalar or an array of step counts.
    """
    k_arr = np.asarray(k)
    if np.any(k_arr < 0):
        raise ValueError("step count must be non-negative")
    p = np.sin((2 * k_arr + 1) * inst.theta) ** 2
    return float(p) if p.ndim == 0 else p


def grover_state(inst: GroverInstance, k: int) -> np.ndarray:
    """State vector G^k |s> by repeated action."""
    psi = uniform_vector(inst)
    for _ in range(k):
        psi = apply_grover_vector(psi, inst.t)
    return psi
