import itertools

import numpy as np
import pytest
from fastapi.testclient import TestClient
from typer.testing import CliRunner

from app.chain import Distribution, Kernel
from app.main import app
from app.zoo.islands import build_two_islands
from app.zoo.pyramid import build_discrete_pyramid
from app.zoo.sequence import build_sequence_of_dependencies


@pytest.fixture
def seq_deps():
    """Sequence of dependencies with n=3 and M=10."""
    return build_sequence_of_dependencies(3, 10.0)


@pytest.fixture
def pyramid():
    return build_discrete_pyramid(2)


@pytest.fixture
def two_islands():
    """Uniform two-islands model with n=2: 7 states."""
    return build_two_islands(2, 1.0)


@pytest.fixture
def swap():
    return Kernel([[0.0, 1.0], [1.0, 0.0]])


@pytest.fixture
def half():
    return Kernel([[0.5, 0.5], [0.5, 0.5]])


@pytest.fixture
def uniform2():
    return Distribution([0.5, 0.5])


@pytest.fixture
def client():
    return TestClient(app)


@pytest.fixture
def runner():
    return CliRunner()


def brute_force_conductance(pi: Distribution, kernel: Kernel) -> float:
    """Reference bottleneck ratio by plain enumeration of every subset."""
    dim = kernel.dim
    flows = pi.probs[:, None] * kernel.rows
    best = np.inf
    for size in range(1, dim + 1):
        for subset in itertools.combinations(range(dim), size):
            inside = np.zeros(dim, dtype=bool)
            inside[list(subset)] = True
            mass = pi.probs[inside].sum()
            if 0 < mass <= 0.5 + 1e-12:
                best = min(best, flows[np.ix_(inside, ~inside)].sum() / mass)
    return best
