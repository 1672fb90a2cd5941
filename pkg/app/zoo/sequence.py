import logging
import math

from app.chain import compose
from app.config import LOG_LEVEL, TOLERANCE
from app.exceptions.model import CompositionMismatchError
from app.zoo.gibbs import GibbsModel, check_parameter, check_size, prior_strength

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MODEL ZOO")

NAME = "seq-deps"


def build_sequence_of_dependencies(n: int, M: float | None = None) -> GibbsModel:
    """
    Builds the sequence of dependencies: x_i can only be true if x_{i-1} is.

    The support is s_0, ..., s_n where s_i has its first i variables true,
    and s_i carries mass M^i.

    Args:
        n (int): Number of binary variables, at least 1.
        M (float | None): Prior strength, 100 * n when omitted.

    Returns:
        GibbsModel: The model with n + 1 states.

    Raises:
        ModelSizeError: If n < 1.
        ModelParameterError: If M <= 0.
    """
    check_size(NAME, n)
    M = prior_strength(n, M)
    check_parameter(NAME, "M", M)

    log_M = math.log(M)
    log_masses = {(1,) * i + (0,) * (n - i): i * log_M for i in range(n + 1)}
    return GibbsModel(NAME, n, [2] * n, log_masses, params={"M": M})


def sweep_success_probability(n: int, M: float | None = None) -> float:
    """
    Probability that one identity-order sweep from s_0 ends at s_n.

    The closed form (M / (1 + M))^n is cross-checked against the row of s_0
    in the composed kernel P_n ... P_1.

    Raises:
        CompositionMismatchError: If the two computations differ by more than the tolerance.
    """
    model = build_sequence_of_dependencies(n, M)
    M = model.params["M"]
    closed_form = (M / (1.0 + M)) ** n

    sweep = compose(model.kernels)
    composed = float(sweep.rows[0, n])
    if abs(closed_form - composed) > TOLERANCE:
        raise CompositionMismatchError(closed_form, composed)

    logger.debug(f"Sweep success n={n} M={M}: {closed_form}")
    return closed_form
