"""Density-matrix evolution of Grover search under depolarizing noise.

Two channels are supported. The total channel (TDCh) replaces the whole
register by I/N with probability gamma. The local channel (LDCh) applies an
independent single-qubit depolarizing channel of width alpha to every qubit.

Qubit 0 is the most significant bit of a basis index, matching the order of
``np.kron`` factors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .config import CapacityError, SimulationLimits, resolve_limits
from .curves import Curve
from .grover import GroverInstance, apply_grover, apply_grover_vector, uniform_vector

PAULIS = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
_PAULI_INDEX = {"I": 0, "X": 1, "Y": 2, "Z": 3}

MODELS = ("tdch", "ldch")


def _pauli_index(pauli) -> int:
    if isinstance(pauli, str):
        return _PAULI_INDEX[pauli.upper()]
    if pauli not in (0, 1, 2, 3):
        raise ValueError(f"Pauli index must be in 0..3, got {pauli!r}")
    return int(pauli)


@dataclass(frozen=True)
class NoiseSpec:
    """Noise model tag plus its width (gamma for TDCh, alpha for LDCh)."""

    model: str
    width: float

    def __post_init__(self):
        if self.model not in MODELS:
            raise ValueError(f"noise model must be one of {MODELS}, got {self.model!r}")
        if not 0.0 <= self.width <= 1.0:
            raise ValueError(f"noise width must lie in [0, 1], got {self.width!r}")

    @classmethod
    def tdch(cls, gamma: float) -> "NoiseSpec":
        return cls("tdch", gamma)

    @classmethod
    def ldch(cls, alpha: float) -> "NoiseSpec":
        return cls("ldch", alpha)


@dataclass(frozen=True)
class KrausOperatorLabel:
    """One of the 4**n tensor products of Paulis making up the LDCh Kraus set."""

    paulis: tuple[int, ...]

    @cached_property
    def m(self) -> int:
        """Number of identity factors."""
        return sum(1 for p in self.paulis if p == 0)

    def weight(self, alpha: float) -> float:
        n = len(self.paulis)
        return (1 - 3 * alpha / 4) ** self.m * (alpha / 4) ** (n - self.m)

    def operator(self) -> np.ndarray:
        """Dense Pauli string (without the sqrt-weight prefactor)."""
        out = np.ones((1, 1), dtype=complex)
        for p in self.paulis:
            out = np.kron(out, PAULIS[p])
        return out


def kraus_labels(n: int):
    for paulis in itertools.product(range(4), repeat=n):
        yield KrausOperatorLabel(paulis)


def pauli_operator(n: int, qubit: int, pauli) -> np.ndarray:
    """Dense single-qubit Pauli acting on ``qubit`` of an n-qubit register."""
    idx = _pauli_index(pauli)
    return np.kron(np.kron(np.eye(2**qubit), PAULIS[idx]), np.eye(2 ** (n - qubit - 1)))


def _n_qubits(rho: np.ndarray) -> int:
    n = int(rho.shape[0]).bit_length() - 1
    if rho.ndim != 2 or rho.shape[0] != rho.shape[1] or 2**n != rho.shape[0]:
        raise ValueError(f"expected a square 2**n matrix, got shape {rho.shape}")
    return n


_SIGN = np.array([1.0, -1.0])


def conjugate_pauli(rho: np.ndarray, qubit: int, pauli) -> np.ndarray:
    """P rho P^dagger for a Pauli on one qubit, by index flips and sign masks.

    X swaps the qubit's bit in both row and column index. Z multiplies an
    entry by (-1)**(b_row + b_col). With Y = [[0, -i], [i, 0]] the two
    phases cancel up to the same parity sign, so Y rho Y^dagger = Z X rho X Z.
    """
    n = _n_qubits(rho)
    idx = _pauli_index(pauli)
    if idx == 0:
        return np.array(rho, copy=True)
    left, right = 2**qubit, 2 ** (n - qubit - 1)
    t = rho.reshape(left, 2, right, left, 2, right)
    if idx in (1, 2):
        t = t[:, ::-1, :, :, ::-1, :]
    if idx in (2, 3):
        t = t * (_SIGN[None, :, None, None, None, None] * _SIGN[None, None, None, None, :, None])
    return np.ascontiguousarray(t).reshape(rho.shape)


def depolarize_qubit(rho: np.ndarray, qubit: int, alpha: float) -> np.ndarray:
    """(1 - 3a/4) rho + (a/4)(X rho X + Y rho Y + Z rho Z) on one qubit."""
    if alpha == 0:
        return np.array(rho, copy=True)
    out = (1 - 3 * alpha / 4) * rho
    for p in (1, 2, 3):
        out += (alpha / 4) * conjugate_pauli(rho, qubit, p)
    return out


def apply_tdch(rho: np.ndarray, gamma: float) -> np.ndarray:
    """(1 - gamma) rho + gamma I/N."""
    N = rho.shape[0]
    out = (1 - gamma) * rho
    out[np.diag_indices(N)] += gamma / N
    return out


def apply_ldch(rho: np.ndarray, alpha: float, order=None) -> np.ndarray:
    """Single-qubit depolarizing channel of width ``alpha`` on every qubit in turn.

    ``order`` permutes the qubit loop; the channels on distinct qubits
    commute so the result does not depend on it.
    """
    n = _n_qubits(rho)
    out = rho
    for q in range(n) if order is None else order:
        out = depolarize_qubit(out, q, alpha)
    return out


def apply_channel(rho: np.ndarray, noise: NoiseSpec) -> np.ndarray:
    if noise.model == "tdch":
        return apply_tdch(rho, noise.width)
    return apply_ldch(rho, noise.width)


def evolve_state(
    inst: GroverInstance, noise: NoiseSpec, k: int, limits: SimulationLimits | None = None
) -> np.ndarray:
    """Density matrix after ``k`` noisy steps (Grover operator, then channel)."""
    return _run(inst, noise, k, limits)[0]


def evolve(
    inst: GroverInstance, noise: NoiseSpec, k: int, limits: SimulationLimits | None = None
) -> Curve:
    """Success probability <t|rho|t> after each of ``k`` noisy steps.

    Entry 0 is the pre-iteration value 1/N. Raises :class:`CapacityError`
    if ``inst.n`` exceeds the configured limit for the noise model.
    """
    _, probs = _run(inst, noise, k, limits)
    return Curve(
        x=np.arange(k + 1),
        y=np.clip(probs, 0.0, 1.0),
        source="simulated",
        label=f"{noise.model} n={inst.n} width={noise.width:g}",
        formula=f"channels.evolve: density-matrix simulation, G then {noise.model.upper()} per step",
        meta={"n": inst.n, "t": inst.t, "model": noise.model, "width": noise.width, "stop": k},
    )


def _run(inst, noise, k, limits):
    if k < 0:
        raise ValueError("step count must be non-negative")
    resolve_limits(limits).check(inst.n, noise.model)
    rho = np.full((inst.N, inst.N), 1.0 / inst.N)
    probs = np.empty(k + 1)
    probs[0] = rho[inst.t, inst.t].real
    for step in range(1, k + 1):
        rho = apply_channel(apply_grover(rho, inst.t), noise)
        probs[step] = rho[inst.t, inst.t].real
    return rho, probs


# -- explicit Kraus-string enumeration ---------------------------------------


def apply_pauli_string(psi: np.ndarray, paulis) -> np.ndarray:
    """Apply a tensor product of Paulis to state vector(s) by bit manipulation.

    A string with X/Y on the qubits in ``xmask`` and Y/Z on those in
    ``zmask`` maps |j> to i**(#Y) (-1)**popcount(j & zmask) |j ^ xmask>.
    """
    n = len(paulis)
    xmask = zmask = 0
    n_y = 0
    for q, p in enumerate(paulis):
        bit = 1 << (n - 1 - q)
        if p in (1, 2):
            xmask |= bit
        if p in (2, 3):
            zmask |= bit
        n_y += p == 2
    idx = np.arange(2**n)
    phase = np.where(np.bitwise_count(idx & zmask) % 2, -1.0, 1.0).astype(complex)
    phase *= 1j**n_y
    out = np.empty(np.shape(psi), dtype=complex)
    out[..., idx ^ xmask] = phase * psi
    return out


def _check_enumeration(inst: GroverInstance, k: int, limits: SimulationLimits | None) -> None:
    cap = resolve_limits(limits).max_kraus_nk
    if inst.n * k > cap:
        raise CapacityError(
            f"Kraus-path enumeration needs 4**(n*k) = 4**{inst.n * k} operator strings; "
            f"n*k={inst.n * k} exceeds the limit n*k <= {cap}"
        )


def kraus_path_states(inst: GroverInstance, k: int, limits: SimulationLimits | None = None):
    """Every unweighted path vector P_k G ... P_1 G |s> over all Pauli strings.

    Returns ``(states, errors)``: a ``(4**(n*k), N)`` array of vectors and the
    number of non-identity Pauli factors along each path.
    """
    _check_enumeration(inst, k, limits)
    labels = [lab.paulis for lab in kraus_labels(inst.n)]
    label_errors = np.array([inst.n - sum(p == 0 for p in lab) for lab in labels])
    states = uniform_vector(inst).astype(complex)[None, :]
    errors = np.zeros(1, dtype=int)
    for _ in range(k):
        states = apply_grover_vector(states, inst.t)
        states = np.concatenate([apply_pauli_string(states, lab) for lab in labels], axis=0)
        errors = np.concatenate([errors + e for e in label_errors])
    return states, errors


def enumerate_kraus_paths(
    inst: GroverInstance, alpha: float, k: int, limits: SimulationLimits | None = None
) -> np.ndarray:
    """Density matrix after ``k`` LDCh steps, summed over all 4**(n*k) Kraus strings.

    Brute-force ground truth for :func:`apply_ldch`; only feasible for n*k <= 8.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")
    states, errors = kraus_path_states(inst, k, limits)
    nk = inst.n * k
    weights = (1 - 3 * alpha / 4) ** (nk - errors) * (alpha / 4) ** errors
    keep = weights > 0
    states, weights = states[keep], weights[keep]
    return (states * weights[:, None]).T @ states.conj()


def error_count_coefficients(
    inst: GroverInstance, k: int, limits: SimulationLimits | None = None
) -> np.ndarray:
    """Coefficients f_i of the expansion of the LDCh success probability.

    ``f[i]`` sums |<t|path>|**2 over the Kraus strings with exactly ``i``
    non-identity Pauli factors, so that
    p(k, alpha) = sum_i (1 - 3 alpha/4)**(n k - i) (alpha/4)**i f[i].
    """
    states, errors = kraus_path_states(inst, k, limits)
    contrib = np.abs(states[:, inst.t]) ** 2
    return np.bincount(errors, weights=contrib, minlength=inst.n * k + 1)


def single_error_sum(inst: GroverInstance, k: int) -> float:
    """Sum of |<t|path>|**2 over strings with exactly one Pauli error.

    Direct enumeration of the n*k*3 single-error paths, without the n*k
    enumeration cap.
    """
    total = 0.0
    forward = [uniform_vector(inst)]
    for _ in range(k):
        forward.append(apply_grover_vector(forward[-1], inst.t))
    for step in range(1, k + 1):
        for q in range(inst.n):
            for p in (1, 2, 3):
                paulis = [0] * inst.n
                paulis[q] = p
                psi = apply_pauli_string(forward[step], paulis)
                for _ in range(k - step):
                    psi = apply_grover_vector(psi, inst.t)
                total += abs(psi[inst.t]) ** 2
    return total
