import itertools
import logging

import numpy as np

from app.config import EXACT_CONDUCTANCE_LIMIT, LOG_LEVEL
from app.zoo.gibbs import GibbsModel

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MODEL ZOO")

NAME = "random"


def build_random_model(
    seed: int,
    max_vars: int = 4,
    max_values: int = 3,
    max_states: int = EXACT_CONDUCTANCE_LIMIT,
) -> GibbsModel:
    """
    Builds a small random Gibbs model with exact conditionals.

    The variable count, the domain sizes, the support and the masses are all
    drawn from ``numpy.random.default_rng(seed)``. The support is capped so that
    the augmented space has at most ``max_states`` states.

    Args:
        seed (int): Generator seed.
        max_vars (int): Largest number of variables, at least 2.
        max_values (int): Largest domain size, at least 2.
        max_states (int): Largest size of the augmented space.

    Returns:
        GibbsModel: A model named "random" whose size parameter is its variable count.
    """
    rng = np.random.default_rng(seed)
    num_vars = int(rng.integers(2, max_vars + 1))
    domains = [int(size) for size in rng.integers(2, max_values + 1, size=num_vars)]

    assignments = list(itertools.product(*(range(size) for size in domains)))
    largest = max(2, min(len(assignments), max_states // num_vars))
    count = int(rng.integers(2, largest + 1))
    chosen = sorted(rng.choice(len(assignments), size=count, replace=False))
    log_mass = np.log(rng.uniform(0.05, 1.0, size=count))

    log_masses = {assignments[i]: float(w) for i, w in zip(chosen, log_mass)}
    logger.debug(f"Random model seed={seed}: {num_vars} variables, {count} states")
    return GibbsModel(NAME, num_vars, domains, log_masses)
