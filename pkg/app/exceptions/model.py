from .base import LabError


class ModelSizeError(LabError):
    """
    Exception raised when a size parameter is outside a model's range.

    Args:
        model (str): The model name.
        n (int): The rejected size.
        allowed (str): Description of the allowed range.
    """

    def __init__(self, model: str, n: int, allowed: str):
        super().__init__(
            loc=["model", model, "n"],
            msg=f"Model '{model}' needs {allowed}, got n={n}.",
        )


class ModelParameterError(LabError):
    """
    Exception raised when a real model parameter is out of range.

    Args:
        model (str): The model name.
        name (str): The parameter name.
        value (float): The rejected value.
        allowed (str): Description of the allowed range.
    """

    def __init__(self, model: str, name: str, value: float, allowed: str):
        super().__init__(
            loc=["model", model, name],
            msg=f"Parameter '{name}' of model '{model}' must be {allowed}, got {value}.",
        )


class EmptySupportError(LabError):
    """
    Exception raised when a model has no positive-mass state.
    """

    def __init__(self, model: str):
        super().__init__(
            loc=["model", model, "states"],
            msg=f"Model '{model}' has an empty support.",
        )


class UnknownModelError(LabError):
    """
    Exception raised when a model name is not registered.

    Args:
        name (str): The rejected name.
    """

    def __init__(self, name: str):
        super().__init__(
            loc=["model", "name"],
            msg=f"Model '{name}' does not exist.",
        )


class MalformedPrefixError(LabError):
    """
    Exception raised when a permutation prefix repeats or leaves 1..n.

    Args:
        n (int): The number of variables.
        prefix (list[int]): The rejected prefix.
    """

    def __init__(self, n: int, prefix: list[int]):
        super().__init__(
            loc=["model", "soft-deps", "prefix"],
            msg=f"Prefix {list(prefix)} is not a list of distinct values in 1..{n}.",
        )


class PrefixConditionMismatchError(LabError):
    """
    Exception raised when the two forms of the window condition disagree.
    """

    def __init__(self, n: int, prefix: list[int]):
        super().__init__(
            loc=["model", "soft-deps", "prefix"],
            msg=f"Window condition forms disagree on prefix {list(prefix)} (n={n}).",
            error_type="invariant_error",
        )


class CompositionMismatchError(LabError):
    """
    Exception raised when a closed form and its kernel composition disagree.
    """

    def __init__(self, closed_form: float, composed: float):
        super().__init__(
            loc=["model", "seq-deps", "sweep"],
            msg=f"Closed form {closed_form!r} and kernel composition {composed!r} disagree.",
            error_type="invariant_error",
        )


class NotTwoIslandsError(LabError):
    """
    Exception raised when a two-islands operation receives another model.
    """

    def __init__(self, model: str):
        super().__init__(
            loc=["model", model],
            msg=f"Model '{model}' has no islands.",
        )


class StateLimitError(LabError):
    """
    Exception raised when a request would build a chain above the served size.

    Args:
        model (str): Model name.
        size (int): Predicted number of states.
        limit (int): Largest number of states served.
    """

    def __init__(self, model: str, size: int, limit: int):
        super().__init__(
            loc=["query", "n"],
            msg=f"Model '{model}' would have {size} states; the limit is {limit}.",
            size=size,
            limit=limit,
        )
