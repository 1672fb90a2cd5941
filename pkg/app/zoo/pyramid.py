import logging

from app.config import LOG_LEVEL
from app.zoo.gibbs import GibbsModel, check_size

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MODEL ZOO")

NAME = "pyramid"


def build_discrete_pyramid(n: int) -> GibbsModel:
    """
    Builds the discrete pyramid: at most one of n binary variables is true.

    State s_0 is all false and s_i has only x_i true; all states have equal mass.

    Raises:
        ModelSizeError: If n < 1.
    """
    check_size(NAME, n)
    log_masses = {(0,) * n: 0.0}
    for i in range(n):
        log_masses[(0,) * i + (1,) + (0,) * (n - i - 1)] = 0.0
    return GibbsModel(NAME, n, [2] * n, log_masses)
