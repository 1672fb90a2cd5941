"""
Exact probability-vector and kernel arithmetic.

Distributions are row vectors and kernels act on the right: one step of a
chain started from mu is ``mu @ P``.
"""

import logging
from collections.abc import Iterable, Iterator
from typing import Protocol

import numpy as np

from app.config import LOG_LEVEL, MAX_STEPS, TOLERANCE
from app.exceptions.chain import (
    DimensionMismatchError,
    EpsilonRangeError,
    InvalidDistributionError,
    InvalidKernelError,
    StepBudgetError,
)
from app.schemas.chain import MixingResult

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MIXING")


def _frozen(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


class Distribution:
    """
    Represents a probability vector over state ids.

    Attributes:
        probs (np.ndarray): Read-only non-negative entries summing to 1.
    """

    __slots__ = ("probs",)

    def __init__(self, probs, validate: bool = True):
        probs = _frozen(probs)
        if validate:
            if probs.ndim != 1 or probs.size == 0:
                raise InvalidDistributionError("expected a non-empty vector")
            if np.any(probs < -TOLERANCE):
                raise InvalidDistributionError("negative entry")
            if abs(probs.sum() - 1.0) > TOLERANCE:
                raise InvalidDistributionError(f"entries sum to {probs.sum()!r}")
        self.probs = probs

    @classmethod
    def point_mass(cls, dim: int, state: int) -> "Distribution":
        probs = np.zeros(dim)
        probs[state] = 1.0
        return cls(probs, validate=False)

    @classmethod
    def uniform(cls, dim: int) -> "Distribution":
        return cls(np.full(dim, 1.0 / dim), validate=False)

    @classmethod
    def from_masses(cls, masses) -> "Distribution":
        masses = np.asarray(masses, dtype=float)
        if np.any(masses < 0) or masses.sum() <= 0:
            raise InvalidDistributionError("masses must be non-negative with positive total")
        return cls(masses / masses.sum())

    @property
    def dim(self) -> int:
        return self.probs.size

    @property
    def min(self) -> float:
        return float(self.probs.min())

    def __getitem__(self, state):
        return self.probs[state]

    def __len__(self) -> int:
        return self.dim

    def __repr__(self):
        return f"<Distribution dim={self.dim}>"

    def __str__(self):
        return np.array2string(self.probs, precision=6)


class Kernel:
    """
    Represents a dense row-stochastic transition matrix.

    Attributes:
        rows (np.ndarray): Read-only square matrix, rows[x, y] = P(x, y).
    """

    __slots__ = ("rows",)

    def __init__(self, rows, validate: bool = True):
        rows = _frozen(rows)
        if validate:
            if rows.ndim != 2 or rows.shape[0] != rows.shape[1] or rows.shape[0] == 0:
                raise InvalidKernelError(f"expected a non-empty square matrix, got shape {rows.shape}")
            if np.any(rows < -TOLERANCE):
                raise InvalidKernelError("negative entry")
            worst = float(np.abs(rows.sum(axis=1) - 1.0).max())
            if worst > TOLERANCE:
                raise InvalidKernelError(f"row sums deviate from 1 by {worst:.3e}")
        self.rows = rows

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    def __matmul__(self, other: "Kernel") -> "Kernel":
        _check_dims(self.dim, other.dim)
        return Kernel(self.rows @ other.rows, validate=False)

    def __repr__(self):
        return f"<Kernel dim={self.dim}>"

    def __str__(self):
        return np.array2string(self.rows, precision=6)


class StepProcess(Protocol):
    """
    Anything that yields the kernel applied at step t = 1, 2, ...
    """

    @property
    def dim(self) -> int: ...

    @property
    def homogeneous(self) -> bool: ...

    def kernel_at(self, t: int) -> Kernel: ...


class HomogeneousChain:
    """
    Time-homogeneous process stepping with the same kernel every time.

    Attributes:
        kernel (Kernel): The step kernel.
    """

    homogeneous = True

    def __init__(self, kernel: Kernel):
        self.kernel = kernel

    @property
    def dim(self) -> int:
        return self.kernel.dim

    def kernel_at(self, t: int) -> Kernel:
        return self.kernel

    def __repr__(self):
        return f"<HomogeneousChain dim={self.dim}>"


def _check_dims(left: int, right: int) -> None:
    if left != right:
        raise DimensionMismatchError(left, right)


def identity(dim: int) -> Kernel:
    return Kernel(np.eye(dim), validate=False)


def tv_distance(mu: Distribution, nu: Distribution) -> float:
    """
    Total variation distance, max over events of |mu(A) - nu(A)|.

    On a finite space this equals half the L1 distance.

    Raises:
        DimensionMismatchError: If the vectors have different lengths.
    """
    _check_dims(mu.dim, nu.dim)
    return float(min(1.0, 0.5 * np.abs(mu.probs - nu.probs).sum()))


def apply(kernel: Kernel, mu: Distribution) -> Distribution:
    """
    One step of the chain: result[y] = sum_x mu[x] P(x, y).

    Raises:
        DimensionMismatchError: If the kernel and distribution disagree in size.
    """
    _check_dims(kernel.dim, mu.dim)
    return Distribution(mu.probs @ kernel.rows, validate=False)


def compose(kernels: Iterable[Kernel]) -> Kernel:
    """
    Product of kernels in application order: first kernel acts first.
    """
    kernels = list(kernels)
    if not kernels:
        raise InvalidKernelError("cannot compose an empty sequence")
    rows = kernels[0].rows
    for kernel in kernels[1:]:
        _check_dims(rows.shape[0], kernel.dim)
        rows = rows @ kernel.rows
    return Kernel(rows, validate=False)


def lazy_kernel(kernel: Kernel) -> Kernel:
    """Returns (I + P) / 2."""
    return Kernel(0.5 * (np.eye(kernel.dim) + kernel.rows), validate=False)


def check_stationary(kernel: Kernel, pi: Distribution) -> float:
    """
    Max-abs residual of the stationarity equation, ||pi P - pi||_inf.
    """
    _check_dims(kernel.dim, pi.dim)
    return float(np.abs(pi.probs @ kernel.rows - pi.probs).max())


def worst_case_tv(matrix: np.ndarray, pi: Distribution) -> float:
    """
    Largest TV distance between a row of ``matrix`` and ``pi``.

    Rows of a t-step product started from the identity are the laws after t
    steps from each point mass; by convexity these attain the maximum over
    all initial distributions.
    """
    return float(min(1.0, 0.5 * np.abs(matrix - pi.probs).sum(axis=1).max()))


def mixing_time(
    schedule: StepProcess,
    pi: Distribution,
    epsilon: float,
    max_steps: int = MAX_STEPS,
) -> MixingResult:
    """
    Worst-case mixing time by literal first hit in increasing t.

    Args:
        schedule (StepProcess): Process giving the kernel of each step.
        pi (Distribution): Stationary distribution of the process.
        epsilon (float): Threshold in (0, 1).
        max_steps (int): Number of steps searched before giving up.

    Returns:
        MixingResult: First t with worst-case TV at most epsilon, with the full trace.

    Raises:
        EpsilonRangeError: If epsilon is outside (0, 1).
        StepBudgetError: If max_steps is negative.
        DimensionMismatchError: If pi does not match the process.
    """
    if not 0 < epsilon < 1:
        raise EpsilonRangeError(epsilon)
    if max_steps < 0:
        raise StepBudgetError(max_steps)
    _check_dims(schedule.dim, pi.dim)

    product = np.eye(schedule.dim)
    trace = [worst_case_tv(product, pi)]
    t = 0
    while trace[-1] > epsilon:
        if t == max_steps:
            logger.warning(f"Mixing time not reached within {max_steps} steps (TV={trace[-1]:.6f})")
            return MixingResult(t_mix=t, epsilon=epsilon, tv_trace=trace, capped=True)
        t += 1
        product = product @ schedule.kernel_at(t).rows
        trace.append(worst_case_tv(product, pi))

    logger.debug(f"t_mix={t} at epsilon={epsilon}")
    return MixingResult(t_mix=t, epsilon=epsilon, tv_trace=trace)


def evolve(
    step,
    mu: Distribution,
    steps: int,
    record_every: int = 1,
) -> Iterator[tuple[int, Distribution]]:
    """
    Iterates a distribution forward and yields (t, mu_t) every ``record_every`` steps.

    Args:
        step: Callable (t, probs) -> probs giving the law after step t.
        mu (Distribution): The initial law.
        steps (int): Number of steps.
        record_every (int): Stride between yielded steps; step 0 is always yielded.
    """
    probs = mu.probs
    yield 0, mu
    for t in range(1, steps + 1):
        probs = step(t, probs)
        if t % record_every == 0 or t == steps:
            yield t, Distribution(probs, validate=False)


def reversibility_residual(kernel: Kernel, pi: Distribution) -> float:
    """
    Largest detailed-balance defect, max over x, y of |pi(x) P(x, y) - pi(y) P(y, x)|.
    """
    _check_dims(kernel.dim, pi.dim)
    flows = pi.probs[:, None] * kernel.rows
    return float(np.abs(flows - flows.T).max())
