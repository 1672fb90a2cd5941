"""
Scan orders as step processes over a GibbsModel.

Augmented states (x, i) are flattened to the index x * n + i, where x is a
state id and i the variable (random scan) or scan position (systematic scan)
sampled next.
"""

import logging
from collections.abc import Sequence
from functools import cached_property

import numpy as np

from app.chain import Distribution, Kernel, compose, lazy_kernel
from app.choices import ChainSpace, ScanKind
from app.config import LOG_LEVEL
from app.exceptions.scan import StepIndexError
from app.scan.permutations import Permutation, check_permutation, format_permutation
from app.zoo.gibbs import GibbsModel

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("SCAN")


def random_scan_kernel(model: GibbsModel) -> Kernel:
    """Returns the uniform mixture (1/n) sum_i P_i."""
    return Kernel(model.random_scan_rows)


def augmented_random_rows(model: GibbsModel) -> np.ndarray:
    """P((x, i), (y, j)) = P_i(x, y) / n for every j."""
    size, n = model.size, model.num_vars
    rows = np.zeros((size, n, size, n))
    for i, kernel in enumerate(model.kernels):
        rows[:, i, :, :] = (kernel.rows / n)[:, :, None]
    return rows.reshape(size * n, size * n)


def augmented_systematic_rows(model: GibbsModel, permutation: Sequence[int]) -> np.ndarray:
    """P((x, i), (y, i + 1 mod n)) = P_sigma(i)(x, y), zero elsewhere."""
    order = check_permutation(permutation, model.num_vars)
    size, n = model.size, model.num_vars
    rows = np.zeros((size, n, size, n))
    for i, var in enumerate(order):
        rows[:, i, :, (i + 1) % n] = model.kernels[var].rows
    return rows.reshape(size * n, size * n)


def augmented_pi(model: GibbsModel) -> Distribution:
    """pi((x, i)) = pi(x) / n."""
    return Distribution(np.repeat(model.pi.probs / model.num_vars, model.num_vars))


class ScanSchedule:
    """
    Represents the rule giving the kernel of every step of a scan.

    Random scan applies (1/n) sum_i P_i at every step. Systematic scan applies
    P_sigma(1 + (t - 1) mod n) at step t, starting from the beginning of the
    permutation. A lazy random scan holds with probability 1/2 on the model's
    states; a lazy systematic scan is the lazy augmented chain, where a hold
    freezes both the state and the scan position.

    Attributes:
        model (GibbsModel): The sampled model.
        kind (ScanKind): Random or systematic.
        permutation (Permutation | None): Zero-based scan order, systematic only.
        lazy (bool): Whether every step holds with probability 1/2.
    """

    def __init__(
        self,
        model: GibbsModel,
        kind: ScanKind,
        permutation: Sequence[int] | None = None,
        lazy: bool = False,
    ):
        self.model = model
        self.kind = ScanKind(kind)
        self.permutation: Permutation | None = None
        if self.kind is ScanKind.SYSTEMATIC:
            self.permutation = check_permutation(permutation, model.num_vars)
        self.lazy = lazy

    @property
    def space(self) -> ChainSpace:
        if self.lazy and self.kind is ScanKind.SYSTEMATIC:
            return ChainSpace.AUGMENTED
        return ChainSpace.STATES

    @property
    def homogeneous(self) -> bool:
        return self.kind is ScanKind.RANDOM or self.lazy or self.model.num_vars == 1

    @property
    def dim(self) -> int:
        if self.space is ChainSpace.AUGMENTED:
            return self.model.size * self.model.num_vars
        return self.model.size

    @cached_property
    def pi(self) -> Distribution:
        """Stationary distribution on the space the schedule steps on."""
        if self.space is ChainSpace.AUGMENTED:
            return augmented_pi(self.model)
        return self.model.pi

    @cached_property
    def _homogeneous_kernel(self) -> Kernel:
        if self.kind is ScanKind.RANDOM:
            kernel = random_scan_kernel(self.model)
        else:
            kernel = Kernel(augmented_systematic_rows(self.model, self.permutation))
        return lazy_kernel(kernel) if self.lazy else kernel

    def variable_at(self, t: int) -> int:
        """Variable sampled at step t of a systematic scan."""
        if t < 1:
            raise StepIndexError(t)
        return self.permutation[(t - 1) % len(self.permutation)]

    def kernel_at(self, t: int) -> Kernel:
        """
        Kernel applied at step t >= 1.

        Raises:
            StepIndexError: If t < 1.
        """
        if t < 1:
            raise StepIndexError(t)
        if self.kind is ScanKind.SYSTEMATIC and not self.lazy:
            return self.model.kernels[self.variable_at(t)]
        return self._homogeneous_kernel

    def step_probs(self, t: int, probs: np.ndarray) -> np.ndarray:
        """
        Law after step t from ``probs`` on the model's states, without dense kernels
        when the model's conditionals are exact.
        """
        if self.space is ChainSpace.AUGMENTED:
            return probs @ self.kernel_at(t).rows
        if self.kind is ScanKind.RANDOM:
            moved = self.model.resample_random_probs(probs)
        else:
            moved = self.model.resample_probs(probs, self.variable_at(t))
        return 0.5 * (probs + moved) if self.lazy else moved

    def describe(self) -> str:
        label = "random" if self.kind is ScanKind.RANDOM else f"systematic({format_permutation(self.permutation)})"
        return f"lazy {label}" if self.lazy else label

    def __repr__(self):
        return f"<ScanSchedule {self.describe()} on {self.model!r}>"

    def __str__(self):
        return self.describe()


def random_schedule(model: GibbsModel) -> ScanSchedule:
    return ScanSchedule(model, ScanKind.RANDOM)


def systematic_schedule(model: GibbsModel, permutation: Sequence[int]) -> ScanSchedule:
    """
    Systematic scan visiting the variables cyclically in ``permutation`` (zero-based).

    Raises:
        InvalidPermutationError: If ``permutation`` is not a permutation of the variables.
    """
    return ScanSchedule(model, ScanKind.SYSTEMATIC, permutation)


def sweep_kernel(model: GibbsModel, permutation: Sequence[int]) -> Kernel:
    """
    One full sweep as a single kernel, P_sigma(1) acting first.

    Raises:
        InvalidPermutationError: If ``permutation`` is not a permutation of the variables.
    """
    order = check_permutation(permutation, model.num_vars)
    return compose(model.kernels[var] for var in order)


def lazy(process: Kernel | ScanSchedule) -> Kernel | ScanSchedule:
    """
    Lazy version of a kernel, (I + P) / 2, or of a schedule.

    A schedule carries a single lazy flag, so a lazy schedule is returned as is.
    """
    if isinstance(process, Kernel):
        return lazy_kernel(process)
    if process.lazy:
        return process
    return ScanSchedule(process.model, process.kind, process.permutation, lazy=True)
