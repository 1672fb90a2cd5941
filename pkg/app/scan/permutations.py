import itertools
import logging
import math
from collections.abc import Iterator, Sequence

from app.choices import ModelName, NamedPermutation
from app.config import LOG_LEVEL
from app.exceptions.scan import InvalidPermutationError, UnknownPermutationNameError

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("SCAN")

Permutation = tuple[int, ...]

# (best, worst) per family
_BEST_WORST = {
    ModelName.SEQ_DEPS: (NamedPermutation.IDENTITY, NamedPermutation.REVERSE),
    ModelName.SOFT_DEPS: (NamedPermutation.IDENTITY, NamedPermutation.REVERSE),
    ModelName.PYRAMID: (NamedPermutation.IDENTITY, NamedPermutation.IDENTITY),
    ModelName.MEMORIZE_REPEAT: (NamedPermutation.IDENTITY, NamedPermutation.IDENTITY),
    ModelName.TWO_ISLANDS: (NamedPermutation.ALTERNATING, NamedPermutation.BLOCKED),
    ModelName.TWO_ISLANDS_MODIFIED: (NamedPermutation.ALTERNATING, NamedPermutation.BLOCKED),
    ModelName.TWO_ISLANDS_SIMPLIFIED: (NamedPermutation.ALTERNATING, NamedPermutation.BLOCKED),
}

_ISLAND_MODELS = {ModelName.TWO_ISLANDS, ModelName.TWO_ISLANDS_MODIFIED, ModelName.TWO_ISLANDS_SIMPLIFIED}


def check_permutation(permutation: Sequence[int], num_vars: int) -> Permutation:
    """
    Validates a zero-based scan order.

    Returns:
        Permutation: The order as a tuple.

    Raises:
        InvalidPermutationError: If it is not a permutation of 0..num_vars-1.
    """
    order = tuple(int(var) for var in permutation)
    if sorted(order) != list(range(num_vars)):
        raise InvalidPermutationError([var + 1 for var in order], num_vars)
    return order


def format_permutation(permutation: Sequence[int]) -> str:
    return ",".join(str(var + 1) for var in permutation)


def named_permutation(model_name: str, num_vars: int, name: NamedPermutation | str) -> Permutation:
    """
    Resolves a named scan order of a model family.

    Best and worst are the identity and the reverse order for the sequence
    families, the alternating and the blocked order for the two-islands
    families, and the identity for the families where every scan mixes alike.

    Args:
        model_name (str): Model family name.
        num_vars (int): Number of variables of the built model.
        name (NamedPermutation | str): The permutation name.

    Raises:
        UnknownPermutationNameError: If the name does not apply to the family.
    """
    try:
        name = NamedPermutation(name)
    except ValueError:
        raise UnknownPermutationNameError(str(name), model_name) from None
    family = next((member for member in ModelName if member.value == model_name), None)

    if name in (NamedPermutation.BEST, NamedPermutation.WORST):
        if family is None:
            raise UnknownPermutationNameError(name.value, model_name)
        best, worst = _BEST_WORST[family]
        name = best if name is NamedPermutation.BEST else worst

    if name is NamedPermutation.IDENTITY:
        return tuple(range(num_vars))
    if name is NamedPermutation.REVERSE:
        return tuple(reversed(range(num_vars)))
    if family in _ISLAND_MODELS:
        half = num_vars // 2
        if name is NamedPermutation.BLOCKED:
            return tuple(range(num_vars))
        return tuple(var for pair in zip(range(half), range(half, num_vars)) for var in pair)

    raise UnknownPermutationNameError(name.value, model_name)


def parse_permutation(text: str, model_name: str, num_vars: int) -> Permutation:
    """
    Parses ``--perm``: a named permutation or comma-separated 1-based indices.

    Raises:
        InvalidPermutationError: If the list is not a permutation of 1..num_vars.
        UnknownPermutationNameError: If the name does not apply to the model.
    """
    text = text.strip()
    if text in {member.value for member in NamedPermutation}:
        return named_permutation(model_name, num_vars, text)
    try:
        order = [int(token) - 1 for token in text.split(",")]
    except ValueError:
        raise InvalidPermutationError(text, num_vars) from None
    return check_permutation(order, num_vars)


def all_permutations(num_vars: int) -> Iterator[Permutation]:
    """Every scan order, in lexicographic (rank) order."""
    return itertools.permutations(range(num_vars))


def permutation_count(num_vars: int) -> int:
    return math.factorial(num_vars)
