import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")

_ACCEPTANCE = []


def random_density_matrix(n, seed, rank=None):
    """Random mixed state on n qubits (complex, full rank unless ``rank`` given)."""
    rng = np.random.default_rng(seed)
    N = 2**n
    r = N if rank is None else rank
    a = rng.normal(size=(N, r)) + 1j * rng.normal(size=(N, r))
    rho = a @ a.conj().T
    return rho / np.trace(rho).real


@pytest.fixture
def acceptance_log():
    """Collects one (criterion, passed, detail) line per acceptance test."""

    def record(criterion, passed, detail):
        _ACCEPTANCE.append((criterion, bool(passed), detail))
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, passed, detail in sorted(_ACCEPTANCE, key=lambda r: r[0]):
        terminalreporter.write_line(f"[{'PASS' if passed else 'FAIL'}] criterion {criterion:>2}: {detail}")
