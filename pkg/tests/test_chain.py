import numpy as np
import pytest
from pydantic import ValidationError

from app.chain import (
    Distribution,
    HomogeneousChain,
    Kernel,
    apply,
    check_stationary,
    compose,
    evolve,
    identity,
    lazy_kernel,
    mixing_time,
    reversibility_residual,
    tv_distance,
)
from app.exceptions.chain import (
    DimensionMismatchError,
    EpsilonRangeError,
    InvalidDistributionError,
    InvalidKernelError,
    StepBudgetError,
)
from app.scan.schedule import random_schedule
from app.schemas.chain import MixingResult


@pytest.mark.parametrize(
    "mu, nu, expected",
    [
        ([0.3, 0.7], [0.3, 0.7], 0.0),
        ([1.0, 0.0], [0.0, 1.0], 1.0),
        ([0.5, 0.5], [0.25, 0.75], 0.25),
    ],
)
def test_tv_distance(mu, nu, expected):
    assert tv_distance(Distribution(mu), Distribution(nu)) == pytest.approx(expected, abs=1e-15)


def test_tv_distance_dimension_mismatch():
    with pytest.raises(DimensionMismatchError):
        tv_distance(Distribution([1.0]), Distribution([0.5, 0.5]))


def test_tv_distance_is_a_metric():
    rng = np.random.default_rng(7)
    for _ in range(50):
        mu, nu, rho = (Distribution.from_masses(rng.uniform(size=6)) for _ in range(3))
        assert tv_distance(mu, nu) == pytest.approx(tv_distance(nu, mu), abs=1e-15)
        assert tv_distance(mu, mu) <= 1e-12
        assert tv_distance(mu, rho) <= tv_distance(mu, nu) + tv_distance(nu, rho) + 1e-12


def test_distribution_validation():
    with pytest.raises(InvalidDistributionError):
        Distribution([0.5, 0.6])
    with pytest.raises(InvalidDistributionError):
        Distribution([1.5, -0.5])
    with pytest.raises(InvalidDistributionError):
        Distribution([])
    assert not Distribution([0.25, 0.75]).probs.flags.writeable


def test_kernel_validation():
    with pytest.raises(InvalidKernelError):
        Kernel([[0.5, 0.4], [0.5, 0.5]])
    with pytest.raises(InvalidKernelError):
        Kernel([[1.0, 0.0]])
    with pytest.raises(InvalidKernelError):
        Kernel([[1.5, -0.5], [0.0, 1.0]])


def test_apply(swap):
    mu = Distribution([0.2, 0.8])
    assert np.allclose(apply(identity(2), mu).probs, mu.probs)
    assert np.allclose(apply(swap, Distribution([1.0, 0.0])).probs, [0.0, 1.0])

    pi = np.array([0.1, 0.3, 0.6])
    rank_one = Kernel(np.tile(pi, (3, 1)))
    assert np.allclose(apply(rank_one, Distribution([1.0, 0.0, 0.0])).probs, pi)


def test_apply_dimension_mismatch(swap):
    with pytest.raises(DimensionMismatchError):
        apply(swap, Distribution([1.0, 0.0, 0.0]))


def test_check_stationary(half, uniform2):
    assert check_stationary(identity(3), Distribution([0.2, 0.3, 0.5])) == 0.0
    assert check_stationary(half, uniform2) == 0.0


def test_compose_applies_first_kernel_first(swap, half):
    composed = compose([swap, half])
    assert np.allclose(composed.rows, swap.rows @ half.rows)
    assert np.allclose(compose([swap, swap]).rows, np.eye(2))
    with pytest.raises(InvalidKernelError):
        compose([])


def test_lazy_kernel(swap):
    assert np.allclose(lazy_kernel(identity(3)).rows, np.eye(3))
    assert np.allclose(lazy_kernel(swap).rows, 0.5)


def test_mixing_time_one_state():
    result = mixing_time(HomogeneousChain(identity(1)), Distribution([1.0]), 0.25)
    assert result.t_mix == 0
    assert result.tv_trace == [0.0]


def test_mixing_time_rank_one(half, uniform2):
    assert mixing_time(HomogeneousChain(half), uniform2, 0.25).t_mix == 1
    assert mixing_time(HomogeneousChain(half), uniform2, 0.6).t_mix == 0


def test_mixing_time_capped(swap, uniform2):
    result = mixing_time(HomogeneousChain(swap), uniform2, 0.25, max_steps=10)
    assert result.capped
    assert result.t_mix == 10
    assert len(result.tv_trace) == 11


@pytest.mark.parametrize("epsilon", [0.0, 1.0, -0.1, 1.5])
def test_mixing_time_epsilon_range(half, uniform2, epsilon):
    with pytest.raises(EpsilonRangeError):
        mixing_time(HomogeneousChain(half), uniform2, epsilon)


def test_mixing_time_step_budget(half, uniform2):
    with pytest.raises(StepBudgetError):
        mixing_time(HomogeneousChain(half), uniform2, 0.25, max_steps=-1)


def test_mixing_time_dimension_mismatch(half):
    with pytest.raises(DimensionMismatchError):
        mixing_time(HomogeneousChain(half), Distribution([1.0, 0.0, 0.0]), 0.25)


def test_homogeneous_trace_is_non_increasing(seq_deps):
    trace = mixing_time(random_schedule(seq_deps), seq_deps.pi, 0.01).tv_trace
    assert all(later <= earlier + 1e-12 for earlier, later in zip(trace, trace[1:]))


def test_mixing_result_rejects_inconsistent_trace():
    with pytest.raises(ValidationError):
        MixingResult(t_mix=2, epsilon=0.25, tv_trace=[1.0, 0.5])
    with pytest.raises(ValidationError):
        MixingResult(t_mix=1, epsilon=0.25, tv_trace=[1.0, 0.5])


def test_evolve_records_every_k_steps(swap):
    steps = list(evolve(lambda t, probs: probs @ swap.rows, Distribution([1.0, 0.0]), 5, record_every=2))
    assert [t for t, _ in steps] == [0, 2, 4, 5]
    assert np.allclose(steps[-1][1].probs, [0.0, 1.0])


def test_reversibility_residual(half, uniform2, seq_deps):
    assert reversibility_residual(half, uniform2) == 0.0
    for kernel in seq_deps.kernels:
        assert reversibility_residual(kernel, seq_deps.pi) <= 1e-12
    cycle = Kernel([[0.0, 1.0, 0.0], [0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
    assert reversibility_residual(cycle, Distribution.uniform(3)) == pytest.approx(1 / 3)
