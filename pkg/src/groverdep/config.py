"""Simulation capacity limits and the errors raised when they are exceeded."""

from __future__ import annotations

import os
from dataclasses import dataclass

ENV_MAX_QUBITS = "GROVER_SIM_MAX_QUBITS"
_MODEL_NAMES = {"ldch": "LDCh", "tdch": "TDCh"}


class CapacityError(RuntimeError):
    """A requested dense computation exceeds the configured qubit limit."""


@dataclass(frozen=True)
class SimulationLimits:
    """Largest qubit counts the dense simulators will accept.

    A density matrix on n qubits holds 4**n entries, so these are memory
    ceilings rather than algorithmic ones.
    """

    max_qubits_ldch: int = 12
    max_qubits_tdch: int = 14
    # 4**(n*k) Kraus strings are enumerated explicitly
    max_kraus_nk: int = 8

    @classmethod
    def from_env(cls) -> "SimulationLimits":
        """Defaults, with both qubit limits replaced by ``$GROVER_SIM_MAX_QUBITS`` if set."""
        raw = os.environ.get(ENV_MAX_QUBITS)
        if raw is None or raw.strip() == "":
            return cls()
        try:
            value = int(raw)
        except ValueError:
            raise ValueError(f"{ENV_MAX_QUBITS} must be an integer, got {raw!r}") from None
        if value < 1:
            raise ValueError(f"{ENV_MAX_QUBITS} must be >= 1, got {value}")
        return cls(max_qubits_ldch=value, max_qubits_tdch=value)

    def limit_for(self, model: str) -> int:
        if model == "ldch":
            return self.max_qubits_ldch
        if model == "tdch":
            return self.max_qubits_tdch
        raise ValueError(f"unknown noise model {model!r}")

    def check(self, n: int, model: str) -> None:
        limit = self.limit_for(model)
        if n > limit:
            raise CapacityError(
                f"{_MODEL_NAMES[model]} density-matrix simulation of n={n} qubits exceeds "
                f"the limit of {limit} qubits (set {ENV_MAX_QUBITS} to override)"
            )


def resolve_limits(limits: SimulationLimits | None) -> SimulationLimits:
    return SimulationLimits.from_env() if limits is None else limits
