import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from groverdep.config import CapacityError, SimulationLimits
from groverdep.grover import (
    GroverInstance,
    apply_grover,
    apply_grover_vector,
    grover_operator,
    grover_state,
    noiseless_probability,
    uniform_state,
    uniform_vector,
)

from conftest import random_density_matrix


def test_instance_derived_fields():
    for n in range(1, 21):
        inst = GroverInstance(n)
        assert inst.N == 2**n
        assert abs(math.sin(inst.theta) - 1 / math.sqrt(inst.N)) < 1e-14


def test_k_gr_matches_high_precision_floor():
    mpmath.mp.dps = 50
    for n in range(1, 41):
        expected = int(mpmath.floor(mpmath.pi / 4 * mpmath.sqrt(2**n)))
        assert GroverInstance(n).k_gr == expected


@pytest.mark.parametrize("n,t", [(0, 0), (2, 4), (3, -1)])
def test_instance_rejects_invalid(n, t):
    with pytest.raises(ValueError):
        GroverInstance(n, t)


def test_uniform_state_small():
    assert np.array_equal(uniform_state(GroverInstance(1)), np.full((2, 2), 0.5))
    assert np.array_equal(uniform_state(GroverInstance(2)), np.full((4, 4), 0.25))
    rho = uniform_state(GroverInstance(3))
    assert np.trace(rho) == pytest.approx(1.0, abs=1e-14)
    assert np.trace(rho @ rho) == pytest.approx(1.0, abs=1e-14)
    assert np.linalg.matrix_rank(rho) == 1


def test_uniform_state_capacity():
    with pytest.raises(CapacityError):
        uniform_state(GroverInstance(5), SimulationLimits(4, 4))


def test_one_step_finds_target_for_n2():
    for t in range(4):
        inst = GroverInstance(2, t)
        psi = grover_operator(inst) @ uniform_vector(inst)
        assert abs(abs(psi[t]) - 1.0) < 1e-12


@pytest.mark.parametrize("n", range(1, 8))
def test_grover_operator_unitary(n):
    g = grover_operator(GroverInstance(n, (3 * n) % 2**n))
    assert np.max(np.abs(g.T.conj() @ g - np.eye(2**n))) < 1e-12


def test_two_steps_n3_t5():
    inst = GroverInstance(3, 5)
    psi = np.linalg.matrix_power(grover_operator(inst), 2) @ uniform_vector(inst)
    assert abs(psi[5]) ** 2 == pytest.approx(math.sin(5 * inst.theta) ** 2, abs=1e-12)


def test_noiseless_probability_examples():
    assert abs(noiseless_probability(GroverInstance(2), 1) - 1.0) < 1e-12
    for n in range(1, 12):
        inst = GroverInstance(n)
        assert noiseless_probability(inst, 0) == pytest.approx(1 / inst.N, rel=1e-12)
    inst = GroverInstance(4, 9)
    psi = np.linalg.matrix_power(grover_operator(inst), 3) @ uniform_vector(inst)
    assert abs(noiseless_probability(inst, 3) - abs(psi[9]) ** 2) < 1e-12


def test_noiseless_probability_rejects_negative():
    with pytest.raises(ValueError):
        noiseless_probability(GroverInstance(3), -1)


@pytest.mark.parametrize("n", range(1, 9))
def test_closed_form_matches_matrix_powers(n):
    inst = GroverInstance(n, 2**n - 1)
    g = grover_operator(inst)
    psi = uniform_vector(inst)
    ks = np.arange(2 * inst.k_gr + 1)
    expected = []
    for _ in ks:
        expected.append(abs(psi[inst.t]) ** 2)
        psi = g @ psi
    got = noiseless_probability(inst, ks)
    assert np.all((got >= 0) & (got <= 1))
    assert np.max(np.abs(got - np.array(expected))) < 1e-10


def test_action_form_matches_dense_vector():
    inst = GroverInstance(5, 17)
    g = grover_operator(inst)
    psi = uniform_vector(inst)
    for k in range(6):
        assert np.allclose(grover_state(inst, k), np.linalg.matrix_power(g, k) @ psi, atol=1e-13)
    stack = np.random.default_rng(0).normal(size=(3, inst.N))
    assert np.allclose(apply_grover_vector(stack, inst.t), stack @ g.T, atol=1e-13)


@given(st.integers(1, 5), st.integers(0, 2**32 - 1))
def test_action_form_matches_dense_conjugation(n, seed):
    inst = GroverInstance(n, seed % 2**n)
    rho = random_density_matrix(n, seed)
    g = grover_operator(inst)
    assert np.max(np.abs(apply_grover(rho, inst.t) - g @ rho @ g.T)) < 1e-12


@pytest.mark.parametrize("n", [3, 6])
def test_noiseless_evolution_stays_pure(n):
    inst = GroverInstance(n, 1)
    rho = uniform_state(inst)
    for _ in range(2 * inst.k_gr):
        rho = apply_grover(rho, inst.t)
        assert abs(np.trace(rho) - 1) < 1e-10
        assert abs(np.trace(rho @ rho) - 1) < 1e-10
        assert np.linalg.matrix_rank(rho, tol=1e-8) == 1
