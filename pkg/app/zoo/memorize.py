"""
Models whose states record a permutation of the variables as it is memorized.

Both families store, in every memorized variable, its 1-based position in the
permutation; unused variables hold 0.
"""

import itertools
import logging
import math
from collections.abc import Sequence

from app.config import LOG_LEVEL, MAX_ENUMERATED_VARIABLES
from app.exceptions.model import MalformedPrefixError, PrefixConditionMismatchError
from app.zoo.gibbs import Assignment, GibbsModel, check_parameter, check_size, prior_strength

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MODEL ZOO")

MEMORIZE_REPEAT = "memorize-repeat"
SOFT_DEPS = "soft-deps"


def _memorized(n: int, prefix: Sequence[int]) -> Assignment:
    values = [0] * n
    for position, var in enumerate(prefix, start=1):
        values[var] = position
    return tuple(values)


def build_memorize_and_repeat(n: int, M: float | None = None) -> GibbsModel:
    """
    Builds one memorize-and-repeat cycle on n variables with values 0..n+1.

    Memorize states hold the values 1..i on i distinct variables and 0
    elsewhere, with mass M^i. Repeat states hold n+1 on i variables and a
    permutation of i+1..n on the others, with mass M^(n+i). The fully
    memorized permutations end the first phase and start the second.

    Args:
        n (int): Number of variables, 1..6.
        M (float | None): Prior strength above 1, 100 * n when omitted.

    Raises:
        ModelSizeError: If n is outside 1..6.
        ModelParameterError: If M <= 1.
    """
    check_size(MEMORIZE_REPEAT, n, MAX_ENUMERATED_VARIABLES)
    M = prior_strength(n, M)
    check_parameter(MEMORIZE_REPEAT, "M", M, above=1.0)
    log_M = math.log(M)

    log_masses: dict[Assignment, float] = {}
    for i in range(n + 1):
        for prefix in itertools.permutations(range(n), i):
            log_masses[_memorized(n, prefix)] = i * log_M

    for i in range(1, n + 1):
        for repeated in itertools.combinations(range(n), i):
            rest = [var for var in range(n) if var not in repeated]
            for values in itertools.permutations(range(i + 1, n + 1)):
                state = [n + 1] * n
                for var, value in zip(rest, values):
                    state[var] = value
                log_masses[tuple(state)] = (n + i) * log_M

    logger.info(f"Enumerated {len(log_masses)} memorize-and-repeat states for n={n}")
    return GibbsModel(MEMORIZE_REPEAT, n, [n + 2] * n, log_masses, params={"M": M})


def _window_by_rotation(n: int, prefix: Sequence[int], k: int) -> int:
    a, b = prefix[k], prefix[k + 1]
    unused = set(range(1, n + 1)) - set(prefix[: k + 2])
    return sum(1 for u in unused if (u - a) % n < (b - a) % n)


def _window_by_cases(n: int, prefix: Sequence[int], k: int) -> int:
    a, b = prefix[k], prefix[k + 1]
    unused = set(range(1, n + 1)) - set(prefix[: k + 2])
    if a < b:
        return sum(1 for u in unused if a < u < b)
    return sum(1 for u in unused if u > a or u < b)


def is_valid_soft_permutation_prefix(n: int, prefix: Sequence[int]) -> bool:
    """
    Whether every element of a 1-based prefix is followed by one of the next
    sqrt(n) unused variables after it, counting cyclically.

    Both the modular count and its explicit case split are evaluated for every
    consecutive pair and must agree.

    Args:
        n (int): Number of variables.
        prefix (Sequence[int]): Distinct values in 1..n.

    Raises:
        MalformedPrefixError: If the prefix repeats a value or leaves 1..n.
        PrefixConditionMismatchError: If the two forms of the condition disagree.
    """
    if len(set(prefix)) != len(prefix) or any(not 1 <= a <= n for a in prefix):
        raise MalformedPrefixError(n, prefix)

    window = math.sqrt(n)
    valid = True
    for k in range(len(prefix) - 1):
        rotation = _window_by_rotation(n, prefix, k)
        if rotation != _window_by_cases(n, prefix, k):
            raise PrefixConditionMismatchError(n, prefix)
        valid = valid and rotation <= window
    return valid


def _valid_prefixes(n: int) -> list[tuple[int, ...]]:
    """Depth-first enumeration in 1-based values; earlier pairs never change once placed."""
    found = [()]
    stack = [(a,) for a in range(n, 0, -1)]
    while stack:
        prefix = stack.pop()
        if not is_valid_soft_permutation_prefix(n, prefix):
            continue
        found.append(prefix)
        stack.extend(prefix + (a,) for a in range(n, 0, -1) if a not in prefix)
    return found


def build_soft_dependencies(n: int, M: float | None = None) -> GibbsModel:
    """
    Builds the soft dependencies model on n variables with values 0..n.

    Memorize states follow valid permutation prefixes with mass M^i. A merge
    state sets a subset of a full valid permutation's variables to n so that at
    least two variables hold n, with mass M^(n - 1 + #n).

    Args:
        n (int): Number of variables, 1..6.
        M (float | None): Prior strength above 1, 100 * n when omitted.

    Raises:
        ModelSizeError: If n is outside 1..6.
        ModelParameterError: If M <= 1.
    """
    check_size(SOFT_DEPS, n, MAX_ENUMERATED_VARIABLES)
    M = prior_strength(n, M)
    check_parameter(SOFT_DEPS, "M", M, above=1.0)
    log_M = math.log(M)

    prefixes = _valid_prefixes(n)
    log_masses: dict[Assignment, float] = {}
    for prefix in prefixes:
        log_masses[_memorized(n, [a - 1 for a in prefix])] = len(prefix) * log_M

    for prefix in (p for p in prefixes if len(p) == n):
        full = _memorized(n, [a - 1 for a in prefix])
        others = [a - 1 for a in prefix[:-1]]
        for size in range(1, n):
            for merged in itertools.combinations(others, size):
                state = list(full)
                for var in merged:
                    state[var] = n
                log_masses.setdefault(tuple(state), (n + size) * log_M)

    logger.info(f"Enumerated {len(log_masses)} soft-dependencies states for n={n}")
    return GibbsModel(SOFT_DEPS, n, [n + 1] * n, log_masses, params={"M": M})
