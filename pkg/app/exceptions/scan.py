from .base import LabError


class InvalidPermutationError(LabError):
    """
    Exception raised when a scan order is not a permutation of the variables.

    Args:
        permutation (object): The rejected value.
        num_vars (int): The number of variables of the model.
    """

    def __init__(self, permutation, num_vars: int):
        super().__init__(
            loc=["scan", "permutation"],
            msg=f"{permutation!r} is not a permutation of 1..{num_vars}.",
        )


class UnknownPermutationNameError(LabError):
    """
    Exception raised when a named permutation does not apply to a model.

    Args:
        name (str): The permutation name.
        model (str): The model name.
    """

    def __init__(self, name: str, model: str):
        super().__init__(
            loc=["scan", "permutation"],
            msg=f"Permutation '{name}' is not defined for model '{model}'.",
        )


class StepIndexError(LabError):
    """
    Exception raised when a schedule is asked for step t < 1.
    """

    def __init__(self, t: int):
        super().__init__(
            loc=["scan", "t"],
            msg=f"Steps are counted from 1, got t={t}.",
        )
