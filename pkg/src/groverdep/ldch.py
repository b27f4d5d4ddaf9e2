"""Closed forms, bounds and the first-order expansion for the local depolarizing channel.

The first-order term needs the total success probability contributed by
paths with exactly one Pauli error. With the target fixed to |0...0> and the
error placed on the last qubit, the states reached stay inside the span of
{|0>, |s>, |1>, |p>}, where |1> = |0...01> and |p> is the normalised sum of the
even basis states. That basis is not orthogonal; states are tracked as
coefficient 4-vectors and the 4x4 matrices below give the action of G, X, Y, Z
in that frame (Y up to the global phase i).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .grover import GroverInstance, noiseless_probability
from .tdch import p_hat_tdch

SQRT2 = math.sqrt(2.0)
UPPER_VARIANTS = ("improved", "power")


def _check_alpha(alpha):
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha!r}")


def p1_exact(inst: GroverInstance, alpha: float) -> float:
    """Exact success probability after one LDCh step."""
    _check_alpha(alpha)
    n, N = inst.n, inst.N
    return 2.0 ** (4 - 3 * n) * (
        N * (N / 2 - 1) * (1 - alpha / 2) ** n + (N - 4) ** 2 / 16
    )


def p1_large_n(inst: GroverInstance, alpha: float) -> float:
    """Large-n form of :func:`p1_exact`: (8 (1 - alpha/2)**n + 1) / N."""
    _check_alpha(alpha)
    return (8 * (1 - alpha / 2) ** inst.n + 1) / inst.N


def gamma_lower(n: int, alpha: float) -> float:
    """Equivalent total-channel width of the worst case, 1 - (1-alpha)**n."""
    return 1.0 - (1.0 - alpha) ** n


def gamma_upper(n: int, alpha: float, variant: str = "improved") -> float:
    """Equivalent width of the best case: n a/(2 + n a), or a**n for ``variant="power"``."""
    if variant == "improved":
        return n * alpha / (2.0 + n * alpha)
    if variant == "power":
        return alpha**n
    raise ValueError(f"upper variant must be one of {UPPER_VARIANTS}, got {variant!r}")


def probability_bounds(
    inst: GroverInstance, k, alpha: float, upper_variant: str = "improved"
) -> tuple:
    """(lower, upper) success probability after ``k`` LDCh steps.

    Both are total-channel probabilities at an equivalent width. The power
    upper bound is proven but nearly vacuous; the improved one is tighter
    and only checked empirically.
    """
    _check_alpha(alpha)
    lower = p_hat_tdch(inst, k, gamma_lower(inst.n, alpha))
    upper = p_hat_tdch(inst, k, gamma_upper(inst.n, alpha, upper_variant))
    return lower, upper


@dataclass(frozen=True)
class SubspaceOperators:
    """Action of G (``A``) and last-qubit X, Y, Z (``B``) on coefficient 4-vectors.

    ``C`` reads out the amplitude of |0>, so the success probability of a
    represented state ``phi`` is ``(C @ phi)**2``.
    """

    A: np.ndarray
    B: tuple
    C: np.ndarray
    lam: float

    @classmethod
    def for_qubits(cls, n: int) -> "SubspaceOperators":
        lam = 2.0 / math.sqrt(2**n)
        l2 = lam * lam
        A = np.array(
            [
                [-1.0, -lam, 0.0, -SQRT2 * lam],
                [lam, l2 - 1, -lam, SQRT2 * (l2 - 1)],
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]
        )
        X = np.array(
            [
                [0.0, 0.0, 1.0, 0.0],
                [0.0, 1.0, 0.0, SQRT2],
                [1.0, 0.0, 0.0, 0.0],
                [0.0, 0.0, 0.0, -1.0],
            ]
        )
        # -i Y = X Z
        Y = np.array(
            [
                [0.0, 0.0, -1.0, 0.0],
                [0.0, 1.0, 0.0, SQRT2],
                [1.0, 0.0, 0.0, 0.0],
                [0.0, -SQRT2, 0.0, -1.0],
            ]
        )
        # Z|s> = sqrt(2)|p> - |s>
        Z = np.array(
            [
                [1.0, 0.0, 0.0, 0.0],
                [0.0, -1.0, 0.0, 0.0],
                [0.0, 0.0, -1.0, 0.0],
                [0.0, SQRT2, 0.0, 1.0],
            ]
        )
        C = np.array([1.0, lam / 2, 0.0, lam / SQRT2])
        return cls(A=A, B=(X, Y, Z), C=C, lam=lam)


def initial_subspace_state() -> np.ndarray:
    """Coefficients of |s> itself."""
    return np.array([0.0, 1.0, 0.0, 0.0])


def subspace_basis(n: int) -> np.ndarray:
    """Dense n-qubit vectors |0>, |s>, |1>, |p> as the columns of an (N, 4) array."""
    N = 2**n
    basis = np.zeros((N, 4))
    basis[0, 0] = 1.0
    basis[:, 1] = 1.0 / math.sqrt(N)
    basis[1, 2] = 1.0
    basis[0::2, 3] = math.sqrt(2.0 / N)
    return basis


def embed_subspace_state(phi: np.ndarray, n: int) -> np.ndarray:
    """Dense vector a|0> + b|s> + c|1> + d|p> for coefficients ``phi``."""
    return subspace_basis(n) @ np.asarray(phi)


def f1(inst: GroverInstance, k: int) -> float:
    """Total single-error success probability f_1(n, k).

    n * sum over steps l = 1..k and Paulis j of (C A**(k-l) B_j A**l phi0)**2,
    the factor n counting which qubit carries the error. Uses O(k)
    4-vector products: forward states A**l phi0 and readout rows C A**m.
    """
    if k < 1:
        raise ValueError("f1 needs at least one step")
    ops = SubspaceOperators.for_qubits(inst.n)
    forward = [initial_subspace_state()]
    readout = [ops.C]
    for _ in range(k):
        forward.append(ops.A @ forward[-1])
        readout.append(readout[-1] @ ops.A)
    total = 0.0
    for step in range(1, k + 1):
        v, r = forward[step], readout[k - step]
        for b in ops.B:
            total += float(r @ (b @ v)) ** 2
    return inst.n * total


def first_order_probability(inst: GroverInstance, k: int, alpha: float, f1_value: float | None = None) -> float:
    """First-order (in alpha) approximation of the LDCh success probability.

    (1 - 3a/4)**(nk) p(k) + (1 - 3a/4)**(nk-1) (a/4) f_1(n, k). Every omitted
    term is non-negative, so this is also a lower bound. Returns 1/N at k=0.
    """
    _check_alpha(alpha)
    if k == 0:
        return 1.0 / inst.N
    nk = inst.n * k
    keep = 1.0 - 0.75 * alpha
    f1_value = f1(inst, k) if f1_value is None else f1_value
    zeroth = keep**nk * noiseless_probability(inst, k)
    # keep**(nk-1) * alpha/4 written so that alpha = 1 (keep = 1/4) stays finite
    first = keep ** (nk - 1) * (alpha / 4) * f1_value
    return zeroth + first
