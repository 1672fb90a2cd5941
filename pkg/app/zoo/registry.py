import logging
from functools import lru_cache

from app.choices import ModelName
from app.config import LOG_LEVEL, MODIFIED_BRIDGE_MASS
from app.exceptions.model import UnknownModelError
from app.zoo.gibbs import GibbsModel
from app.zoo.islands import build_two_islands, build_two_islands_simplified
from app.zoo.memorize import build_memorize_and_repeat, build_soft_dependencies
from app.zoo.pyramid import build_discrete_pyramid
from app.zoo.sequence import build_sequence_of_dependencies

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MODEL ZOO")


def _resolve(name: str) -> ModelName:
    try:
        return ModelName(name)
    except ValueError:
        raise UnknownModelError(name) from None


@lru_cache(maxsize=64)
def build_model(
    name: str,
    n: int,
    M: float | None = None,
    bridge_mass: float | None = None,
) -> GibbsModel:
    """
    Builds a model by its command-line name.

    Every two-islands variant except the uniform one defaults to the bridge mass
    0.1, the reduced chain included. Built models are cached per process, so
    worker processes rebuild each model once.

    Args:
        name (str): One of the ModelName values.
        n (int): Size parameter.
        M (float | None): Prior strength for the prior-weighted families.
        bridge_mass (float | None): Bridge mass for the two-islands families.

    Raises:
        UnknownModelError: If the name is not registered.
    """
    match _resolve(name):
        case ModelName.SEQ_DEPS:
            model = build_sequence_of_dependencies(n, M)
        case ModelName.TWO_ISLANDS:
            model = build_two_islands(n, 1.0 if bridge_mass is None else bridge_mass)
        case ModelName.TWO_ISLANDS_MODIFIED:
            model = build_two_islands(n, MODIFIED_BRIDGE_MASS if bridge_mass is None else bridge_mass)
            model.name = ModelName.TWO_ISLANDS_MODIFIED.value
        case ModelName.TWO_ISLANDS_SIMPLIFIED:
            model = build_two_islands_simplified(n, MODIFIED_BRIDGE_MASS if bridge_mass is None else bridge_mass)
        case ModelName.PYRAMID:
            model = build_discrete_pyramid(n)
        case ModelName.MEMORIZE_REPEAT:
            model = build_memorize_and_repeat(n, M)
        case ModelName.SOFT_DEPS:
            model = build_soft_dependencies(n, M)

    logger.info(f"Built model {model!r}")
    return model


def predicted_size(name: str, n: int) -> int | None:
    """
    Number of states ``build_model`` would produce, without building it.

    Returns None for the enumerated families, whose size is bounded by the
    variable limit.

    Raises:
        UnknownModelError: If the name is not registered.
    """
    match _resolve(name):
        case ModelName.SEQ_DEPS | ModelName.PYRAMID:
            return n + 1
        case ModelName.TWO_ISLANDS | ModelName.TWO_ISLANDS_MODIFIED:
            return 2 * (2**n - 1) + 1
        case ModelName.TWO_ISLANDS_SIMPLIFIED:
            return 2 * n + 1
        case _:
            return None
