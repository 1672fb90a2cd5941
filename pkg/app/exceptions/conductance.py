from .base import LabError


class StateSpaceTooLargeError(LabError):
    """
    Exception raised when exact subset enumeration is requested on too many states.

    Args:
        size (int): Number of states.
        limit (int): Largest accepted number of states.
    """

    def __init__(self, size: int, limit: int):
        super().__init__(
            loc=["conductance", "states"],
            msg=f"State space too large for exact conductance: {size} > {limit}.",
        )


class InvalidStateSetError(LabError):
    """
    Exception raised when a state set is empty, massless or out of range.

    Args:
        reason (str): Which check failed.
    """

    def __init__(self, reason: str):
        super().__init__(
            loc=["conductance", "set"],
            msg=f"Invalid state set: {reason}.",
        )


class BoundDomainError(LabError):
    """
    Exception raised when a mixing bound is evaluated outside its domain.

    Args:
        name (str): The parameter name.
        value (float): The rejected value.
        allowed (str): Description of the domain.
    """

    def __init__(self, name: str, value: float, allowed: str):
        super().__init__(
            loc=["conductance", name],
            msg=f"'{name}' must satisfy {allowed}, got {value}.",
        )


class MixingCapExceededError(LabError):
    """
    Exception raised when a bound check or growth-rate fit needs a mixing time that hit the step cap.
    """

    def __init__(self, process: str, max_steps: int):
        super().__init__(
            loc=["conductance", "t_mix"],
            msg=f"Mixing time of {process} not reached within {max_steps} steps.",
        )
