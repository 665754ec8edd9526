import numpy as np
import pytest

from cqlock import OptimizerConfig


def random_unitary(d, rng):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    q, _ = np.linalg.qr(g)
    return q


def bell_state():
    """|Phi+><Phi+| on two qubits."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = psi[3] = 1 / np.sqrt(2)
    return np.outer(psi, psi.conj())


@pytest.fixture
def fast_cfg():
    """Reduced-budget optimizer config for tests that only need a sane search."""
    return OptimizerConfig(restarts=3, max_iters=60, seed=1)
