"""
Stationary flows and exact conductance.

The exact bottleneck ratio enumerates every subset of states. States are
split into two halves and every subset of a half is tabulated once: its
mass, the flow leaving it inside its half, and its flows to and from each
state of the other half. Whole subsets are then combined block by block, so
Q(S, S^c) is a sum of non-negative terms and keeps its relative accuracy on
sets of tiny stationary mass.
"""

import logging
from collections.abc import Iterable

import numpy as np

from app.chain import Distribution, Kernel
from app.config import EXACT_CONDUCTANCE_LIMIT, LOG_LEVEL, TOLERANCE
from app.exceptions.chain import DimensionMismatchError
from app.exceptions.conductance import InvalidStateSetError, StateSpaceTooLargeError

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("CONDUCTANCE")

BLOCK_ENTRIES = 1 << 20


def _state_ids(states: Iterable[int], dim: int) -> np.ndarray:
    ids = np.unique(np.fromiter((int(x) for x in states), dtype=np.intp))
    if ids.size and (ids[0] < 0 or ids[-1] >= dim):
        raise InvalidStateSetError(f"state ids must lie in 0..{dim - 1}")
    return ids


def _flow_matrix(pi: Distribution, kernel: Kernel) -> np.ndarray:
    if pi.dim != kernel.dim:
        raise DimensionMismatchError(pi.dim, kernel.dim)
    return pi.probs[:, None] * kernel.rows


def flow(pi: Distribution, kernel: Kernel, A: Iterable[int], B: Iterable[int]) -> float:
    """
    Q(A, B) = sum over x in A and y in B of pi(x) P(x, y).

    Raises:
        InvalidStateSetError: If a state id is out of range.
    """
    rows = _flow_matrix(pi, kernel)
    a, b = _state_ids(A, kernel.dim), _state_ids(B, kernel.dim)
    return float(rows[np.ix_(a, b)].sum())


def set_conductance(pi: Distribution, kernel: Kernel, S: Iterable[int]) -> float:
    """
    Phi(S) = Q(S, S^c) / pi(S).

    Raises:
        InvalidStateSetError: If S is empty, has no mass or holds an id out of range.
    """
    s = _state_ids(S, kernel.dim)
    if s.size == 0:
        raise InvalidStateSetError("empty set")
    mass = float(pi.probs[s].sum())
    if mass <= 0:
        raise InvalidStateSetError("set has zero stationary mass")
    complement = np.setdiff1d(np.arange(kernel.dim), s)
    return flow(pi, kernel, s, complement) / mass


def _indicators(count: int) -> np.ndarray:
    masks = np.arange(1 << count)[:, None]
    return ((masks >> np.arange(count)) & 1).astype(float)


def _half_tables(rows: np.ndarray, pi: np.ndarray, members: np.ndarray, others: np.ndarray):
    """
    Per subset of ``members`` (indexed by bitmask): its mass, the flow from it to
    the rest of ``members``, the flow from it to each state of ``others`` and the
    flow from each state of ``others`` into the rest of ``members``.
    """
    inside = _indicators(members.size)
    outside = 1.0 - inside
    mass = inside @ pi[members]
    leaving = ((inside @ rows[np.ix_(members, members)]) * outside).sum(axis=1)
    to_others = inside @ rows[np.ix_(members, others)]
    from_others = outside @ rows[np.ix_(others, members)].T
    return mass, leaving, to_others, from_others


def chain_conductance(pi: Distribution, kernel: Kernel) -> tuple[float, tuple[int, ...]]:
    """
    Exact bottleneck ratio Phi* = min over 0 < pi(S) <= 1/2 of Phi(S).

    Ties within 1e-12 go to the smallest set, then to the lexicographically
    smallest sorted state ids.

    Args:
        pi (Distribution): Stationary distribution.
        kernel (Kernel): The chain.

    Returns:
        tuple[float, tuple[int, ...]]: Phi* and a minimising set.

    Raises:
        StateSpaceTooLargeError: If there are more than 24 states.
        InvalidStateSetError: If no set has 0 < pi(S) <= 1/2.
    """
    dim = kernel.dim
    if dim > EXACT_CONDUCTANCE_LIMIT:
        raise StateSpaceTooLargeError(dim, EXACT_CONDUCTANCE_LIMIT)

    rows = _flow_matrix(pi, kernel)
    half = dim // 2
    first, second = np.arange(half), np.arange(half, dim)
    mass_a, leaving_a, to_b, from_b = _half_tables(rows, pi.probs, first, second)
    mass_b, leaving_b, _, _ = _half_tables(rows, pi.probs, second, first)
    inside_b = _indicators(second.size)
    outside_b = 1.0 - inside_b

    chunk = max(1, BLOCK_ENTRIES // mass_b.size)

    def blocks():
        for start in range(0, mass_a.size, chunk):
            stop = min(start + chunk, mass_a.size)
            mass = mass_a[start:stop, None] + mass_b[None, :]
            boundary = (
                leaving_a[start:stop, None]
                + leaving_b[None, :]
                + to_b[start:stop] @ outside_b.T
                + from_b[start:stop] @ inside_b.T
            )
            eligible = (mass > 0) & (mass <= 0.5 + TOLERANCE)
            with np.errstate(divide="ignore", invalid="ignore"):
                phi = np.where(eligible, boundary / mass, np.inf)
            yield start, phi

    best, candidates = np.inf, []
    for start, phi in blocks():
        low = float(phi.min())
        if not np.isfinite(low) or low > best + TOLERANCE:
            continue
        a, b = np.nonzero(phi <= low + TOLERANCE)
        candidates.append((phi[a, b], a + start, b))
        best = min(best, low)
    if not np.isfinite(best):
        raise InvalidStateSetError("no set with 0 < pi(S) <= 1/2")

    sizes_a = _indicators(half).sum(axis=1).astype(int)
    sizes_b = inside_b.sum(axis=1).astype(int)

    def members(a: int, b: int) -> tuple[int, ...]:
        ids = [i for i in range(half) if a >> i & 1]
        ids.extend(half + j for j in range(second.size) if b >> j & 1)
        return tuple(ids)

    chosen = None
    for values, a, b in candidates:
        tied = values <= best + TOLERANCE
        if not tied.any():
            continue
        a, b = a[tied], b[tied]
        sizes = sizes_a[a] + sizes_b[b]
        keep = sizes == sizes.min()
        for pair in zip(a[keep].tolist(), b[keep].tolist()):
            ids = members(*pair)
            if chosen is None or (len(ids), ids) < (len(chosen), chosen):
                chosen = ids

    logger.debug(f"Exact conductance over {dim} states: {best} at {chosen}")
    return best, chosen
