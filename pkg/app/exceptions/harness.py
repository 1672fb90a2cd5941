from .base import LabError


class EnumerationTooLargeError(LabError):
    """
    Exception raised when enumerating every permutation exceeds the limit.

    Args:
        count (int): Number of permutations.
        limit (int): Largest count enumerated without an override.
    """

    def __init__(self, count: int, limit: int):
        super().__init__(
            loc=["harness", "policy"],
            msg=f"Enumerating {count} permutations exceeds {limit}; sample or pass --override-enumeration-limit.",
        )


class UnsupportedModelError(LabError):
    """
    Exception raised when an experiment does not accept a model.

    Args:
        experiment (str): Experiment id.
        model (str): The rejected model.
    """

    def __init__(self, experiment: str, model: str):
        super().__init__(
            loc=["harness", experiment, "model"],
            msg=f"Experiment '{experiment}' does not support model '{model}'.",
        )
