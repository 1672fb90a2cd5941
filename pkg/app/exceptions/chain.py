from .base import LabError


class DimensionMismatchError(LabError):
    """
    Exception raised when two operands live on state spaces of different sizes.

    Args:
        left (int): Dimension of the first operand.
        right (int): Dimension of the second operand.
    """

    def __init__(self, left: int, right: int):
        super().__init__(
            loc=["chain", "dim"],
            msg=f"Dimension mismatch: {left} != {right}.",
            left=left,
            right=right,
        )


class InvalidDistributionError(LabError):
    """
    Exception raised when a vector is not a probability distribution.

    Args:
        reason (str): Which invariant failed.
    """

    def __init__(self, reason: str):
        super().__init__(
            loc=["chain", "distribution"],
            msg=f"Invalid distribution: {reason}.",
        )


class InvalidKernelError(LabError):
    """
    Exception raised when a matrix is not a row-stochastic kernel.

    Args:
        reason (str): Which invariant failed.
    """

    def __init__(self, reason: str):
        super().__init__(
            loc=["chain", "kernel"],
            msg=f"Invalid kernel: {reason}.",
        )


class EpsilonRangeError(LabError):
    """
    Exception raised when a mixing threshold is outside its open interval.

    Args:
        epsilon (float): The rejected value.
        upper (float): Exclusive upper end of the interval.
    """

    def __init__(self, epsilon: float, upper: float = 1.0):
        super().__init__(
            loc=["chain", "epsilon"],
            msg=f"Epsilon must lie in (0, {upper}), got {epsilon}.",
        )


class StepBudgetError(LabError):
    """
    Exception raised when a step budget is negative.
    """

    def __init__(self, max_steps: int):
        super().__init__(
            loc=["chain", "max_steps"],
            msg=f"max_steps must be non-negative, got {max_steps}.",
        )
