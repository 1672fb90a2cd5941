import logging
from collections.abc import Sequence
from functools import cached_property

from app.chain import Kernel, check_stationary, lazy_kernel
from app.choices import ScanKind
from app.config import LOG_LEVEL, TOLERANCE
from app.scan.permutations import Permutation, check_permutation, format_permutation
from app.scan.schedule import augmented_pi, augmented_random_rows, augmented_systematic_rows
from app.zoo.gibbs import GibbsModel

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("CONDUCTANCE")


class AugmentedChain:
    """
    Represents a scan as a homogeneous chain on pairs (state, next index).

    Attributes:
        model (GibbsModel): The base model.
        kind (ScanKind): Random or systematic augmentation.
        permutation (Permutation | None): Zero-based scan order, systematic only.
        kernel (Kernel): Kernel over the flattened pairs x * n + i.
        pi (Distribution): pi((x, i)) = pi(x) / n.
        stationarity_residual (float): ||pi P - pi||_inf of the kernel.
    """

    def __init__(self, model: GibbsModel, kind: ScanKind, kernel: Kernel, permutation: Permutation | None = None):
        self.model = model
        self.kind = ScanKind(kind)
        self.permutation = permutation
        self.kernel = kernel
        self.pi = augmented_pi(model)
        self.stationarity_residual = check_stationary(kernel, self.pi)
        if self.stationarity_residual > TOLERANCE:
            logger.warning(f"{self!r} is not stationary: residual {self.stationarity_residual:.3e}")

    @property
    def dim(self) -> int:
        return self.kernel.dim

    @cached_property
    def states(self) -> list[tuple[int, int]]:
        return [(x, i) for x in range(self.model.size) for i in range(self.model.num_vars)]

    @cached_property
    def lazy_kernel(self) -> Kernel:
        return lazy_kernel(self.kernel)

    def __repr__(self):
        label = self.kind.value
        if self.permutation is not None:
            label += f"({format_permutation(self.permutation)})"
        return f"<AugmentedChain {label} on {self.model!r}>"


def augment_systematic(model: GibbsModel, permutation: Sequence[int]) -> AugmentedChain:
    """
    Systematic scan on the augmented space: from (x, i) sample variable
    sigma(i) and move to scan position i + 1 mod n.

    Raises:
        InvalidPermutationError: If ``permutation`` is not a permutation of the variables.
    """
    order = check_permutation(permutation, model.num_vars)
    kernel = Kernel(augmented_systematic_rows(model, order))
    return AugmentedChain(model, ScanKind.SYSTEMATIC, kernel, order)


def augment_random(model: GibbsModel) -> AugmentedChain:
    """Random scan on the augmented space: from (x, i) sample variable i, then draw the next index uniformly."""
    return AugmentedChain(model, ScanKind.RANDOM, Kernel(augmented_random_rows(model)))
