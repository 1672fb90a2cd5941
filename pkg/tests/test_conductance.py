import math

import numpy as np
import pytest

from app.chain import Distribution, Kernel, identity, lazy_kernel
from app.choices import ScanKind
from app.conductance.augmented import augment_random, augment_systematic
from app.conductance.bounds import (
    theorem2_bounds,
    verify_lemma1,
    verify_theorem1,
    verify_theorem2,
    verify_upper_conductance,
)
from app.conductance.flow import chain_conductance, flow, set_conductance
from app.exceptions.chain import EpsilonRangeError
from app.exceptions.conductance import BoundDomainError, InvalidStateSetError, StateSpaceTooLargeError
from app.exceptions.scan import InvalidPermutationError
from app.scan.permutations import all_permutations
from app.scan.schedule import random_scan_kernel
from app.zoo.fuzz import build_random_model
from app.zoo.pyramid import build_discrete_pyramid
from app.zoo.registry import build_model
from app.zoo.sequence import build_sequence_of_dependencies
from tests.conftest import brute_force_conductance


def test_flow(half, uniform2):
    assert flow(uniform2, half, [], [0, 1]) == 0.0
    assert flow(uniform2, half, [0, 1], [0, 1]) == pytest.approx(1.0)
    assert flow(uniform2, half, [0], [1]) == pytest.approx(0.25)
    with pytest.raises(InvalidStateSetError):
        flow(uniform2, half, [2], [0])


def test_set_conductance(half, uniform2):
    assert set_conductance(uniform2, half, [0]) == pytest.approx(0.5)
    assert set_conductance(Distribution.uniform(3), identity(3), [0, 2]) == 0.0

    pi = Distribution([0.2, 0.3, 0.5])
    rank_one = Kernel(np.tile(pi.probs, (3, 1)))
    assert set_conductance(pi, rank_one, [0, 1]) == pytest.approx(0.5)
    assert set_conductance(pi, rank_one, [2]) == pytest.approx(0.5)
    assert set_conductance(pi, rank_one, [0]) == pytest.approx(0.8)


def test_set_conductance_errors(half, uniform2):
    with pytest.raises(InvalidStateSetError):
        set_conductance(uniform2, half, [])
    with pytest.raises(InvalidStateSetError):
        set_conductance(Distribution([1.0, 0.0]), half, [1])


def test_chain_conductance_two_states(half, uniform2):
    phi, states = chain_conductance(uniform2, half)
    assert phi == pytest.approx(0.5)
    assert states == (0,)


def test_chain_conductance_two_islands(two_islands):
    phi, states = chain_conductance(two_islands.pi, random_scan_kernel(two_islands))
    assert phi == pytest.approx(1 / 12, abs=1e-12)
    assert states == (1, 2, 3)


def test_chain_conductance_too_large():
    with pytest.raises(StateSpaceTooLargeError):
        chain_conductance(Distribution.uniform(25), identity(25))


def test_chain_conductance_without_eligible_set():
    with pytest.raises(InvalidStateSetError):
        chain_conductance(Distribution([1.0]), identity(1))


@pytest.mark.parametrize("seed", range(8))
def test_chain_conductance_matches_enumeration(seed):
    rng = np.random.default_rng(seed)
    dim = int(rng.integers(2, 11))
    rows = rng.uniform(size=(dim, dim)) * (rng.uniform(size=(dim, dim)) < 0.5)
    rows[np.arange(dim), np.arange(dim)] += 0.1
    kernel = Kernel(rows / rows.sum(axis=1, keepdims=True))
    pi = Distribution.from_masses(rng.uniform(0.01, 1.0, size=dim))

    phi, states = chain_conductance(pi, kernel)
    assert phi == pytest.approx(brute_force_conductance(pi, kernel), abs=1e-12)
    assert set_conductance(pi, kernel, states) == pytest.approx(phi, abs=1e-12)
    assert pi.probs[list(states)].sum() <= 0.5 + 1e-12


@pytest.mark.parametrize("name, n", [("seq-deps", 3), ("pyramid", 3), ("two-islands-simplified", 2)])
def test_model_conductance_matches_enumeration(name, n):
    model = build_model(name, n)
    kernel = random_scan_kernel(model)
    phi, _ = chain_conductance(model.pi, kernel)
    assert phi == pytest.approx(brute_force_conductance(model.pi, kernel), abs=1e-12)


def test_augment_systematic(seq_deps):
    augmented = augment_systematic(seq_deps, (2, 0, 1))
    n, size = seq_deps.num_vars, seq_deps.size
    assert augmented.dim == size * n
    assert augmented.kind is ScanKind.SYSTEMATIC
    assert augmented.stationarity_residual <= 1e-12
    assert augmented.states[n + 1] == (1, 1)

    blocks = augmented.kernel.rows.reshape(size, n, size, n)
    for i in range(n):
        assert np.all(np.delete(blocks[:, i], (i + 1) % n, axis=-1) == 0)
        assert np.allclose(blocks[:, i, :, (i + 1) % n], seq_deps.kernels[(2, 0, 1)[i]].rows)


def test_augment_random(seq_deps):
    augmented = augment_random(seq_deps)
    n, size = seq_deps.num_vars, seq_deps.size
    assert augmented.dim == size * n
    assert augmented.stationarity_residual <= 1e-12
    blocks = augmented.kernel.rows.reshape(size, n, size, n)
    assert np.allclose(blocks.sum(axis=2), 1 / n)
    assert np.allclose(augmented.lazy_kernel.rows, lazy_kernel(augmented.kernel).rows)


@pytest.mark.parametrize("name, n", [("seq-deps", 3), ("pyramid", 3), ("two-islands", 2), ("soft-deps", 3)])
def test_augmented_chains_are_stationary(name, n):
    model = build_model(name, n)
    assert augment_random(model).stationarity_residual <= 1e-12
    for order in all_permutations(model.num_vars):
        assert augment_systematic(model, order).stationarity_residual <= 1e-12


def test_augment_systematic_rejects_bad_order(seq_deps):
    with pytest.raises(InvalidPermutationError):
        augment_systematic(seq_deps, (0, 0, 1))


@pytest.mark.parametrize(
    "model",
    [build_sequence_of_dependencies(3), build_discrete_pyramid(3)],
    ids=["seq-deps", "pyramid"],
)
def test_lemma1_holds(model):
    report = verify_lemma1(model, (0, 1, 2))
    assert report.holds
    assert {"gamma", "pi_min", "phi_rs", "phi_rs_a", "phi_ss_a"} <= set(report.quantities)
    assert [inequality.name for inequality in report.inequalities] == ["lemma1-lower", "lemma1-upper"]


def test_lemma1_reports_gamma():
    report = verify_lemma1(build_sequence_of_dependencies(2, 10.0), (0, 1))
    assert report.quantities["gamma"] == pytest.approx(1 / 11)


def test_lemma1_size_limit():
    with pytest.raises(StateSpaceTooLargeError):
        verify_lemma1(build_sequence_of_dependencies(5), (0, 1, 2, 3, 4))


def test_theorem2_bounds():
    lower, upper = theorem2_bounds(0.5, 0.5, 0.25)
    assert lower == pytest.approx(0.5)
    assert upper == pytest.approx(8 * math.log(8))
    assert upper == pytest.approx(16.636, abs=1e-3)
    assert theorem2_bounds(1.0, 0.5, 0.25)[0] == pytest.approx(0.25)


@pytest.mark.parametrize("phi, pi_min, epsilon, error", [
    (0.0, 0.5, 0.25, BoundDomainError),
    (1.5, 0.5, 0.25, BoundDomainError),
    (0.5, 0.0, 0.25, BoundDomainError),
    (0.5, 0.5, 0.5, EpsilonRangeError),
    (0.5, 0.5, 0.0, EpsilonRangeError),
])
def test_theorem2_domain(phi, pi_min, epsilon, error):
    with pytest.raises(error):
        theorem2_bounds(phi, pi_min, epsilon)


def test_theorem2_brackets_pyramid():
    report = verify_theorem2(build_discrete_pyramid(4), (0, 1, 2, 3))
    assert report.holds
    lazy = report.quantities
    assert lazy["lower_lazy_random"] <= lazy["t_mix_lazy_random"] <= lazy["upper_lazy_random"]


def test_theorem1_holds():
    report = verify_theorem1(build_sequence_of_dependencies(3), (0, 1, 2), 0.25)
    assert report.holds
    assert report.quantities["t_mix_systematic_states"] == 3
    with pytest.raises(EpsilonRangeError):
        verify_theorem1(build_sequence_of_dependencies(3), (0, 1, 2), 0.6)


def test_theorem1_holds_on_every_pyramid_scan():
    model = build_discrete_pyramid(4)
    reports = [verify_theorem1(model, order) for order in all_permutations(model.num_vars)]
    assert len(reports) == 24
    assert all(report.holds for report in reports)


@pytest.mark.parametrize("seed", [0, 1, 2, 3])
def test_upper_conductance_on_random_models(seed):
    model = build_random_model(seed)
    report = verify_upper_conductance(model)
    assert report.holds
    assert len(report.inequalities) == math.factorial(model.num_vars)


def test_bound_report_rows():
    report = verify_lemma1(build_sequence_of_dependencies(2, 10.0), (1, 0))
    rows = report.rows()
    assert rows[0] == ["gamma", report.quantities["gamma"]]
    assert rows[-1][0] == "lemma1-upper"
    assert rows[-1][-1] in ("true", "false")
    assert b'"case"' in report.to_json()
