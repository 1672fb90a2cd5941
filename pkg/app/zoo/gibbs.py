import logging
from collections.abc import Mapping, Sequence
from functools import cached_property

import numpy as np

from app.chain import Distribution, Kernel
from app.choices import Island
from app.config import DEFAULT_PRIOR_FACTOR, LOG_LEVEL
from app.exceptions.chain import DimensionMismatchError
from app.exceptions.model import (
    EmptySupportError,
    ModelParameterError,
    ModelSizeError,
    NotTwoIslandsError,
)

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MODEL ZOO")

Assignment = tuple[int, ...]


def check_size(model: str, n: int, high: int | None = None) -> None:
    if n < 1 or (high is not None and n > high):
        allowed = "n >= 1" if high is None else f"1 <= n <= {high}"
        raise ModelSizeError(model, n, allowed)


def check_parameter(model: str, name: str, value: float, above: float = 0.0) -> None:
    if not value > above:
        raise ModelParameterError(model, name, value, f"> {above:g}")


def prior_strength(n: int, M: float | None) -> float:
    """Returns M, defaulting to DEFAULT_PRIOR_FACTOR * n."""
    return float(DEFAULT_PRIOR_FACTOR * n) if M is None else float(M)


class GibbsModel:
    """
    Represents a discrete distribution on an enumerated support together
    with its single-variable Gibbs kernels.

    Conditionals are computed over positive-mass values only: resampling
    variable i at x redistributes over the slice of support states that agree
    with x everywhere except on i, proportionally to their masses.

    Attributes:
        name (str): Model identifier.
        n (int): Size parameter of the model family.
        num_vars (int): Number of variables.
        domains (tuple[int, ...]): Domain size of every variable.
        states (tuple[Assignment, ...]): Support assignments in state-id order.
        log_mass (np.ndarray): Natural log of the unnormalised mass of every state.
        pi (Distribution): Stationary distribution, mass / total mass.
        params (dict[str, float]): Model-specific reals (prior strength M, bridge_mass).
        exact_conditionals (bool): False when the kernels are not single-site resamples.
        islands (dict[Island, np.ndarray] | None): State ids of each island, two-islands models only.
        bridge (int | None): State id of the bridge, two-islands models only.
    """

    def __init__(
        self,
        name: str,
        n: int,
        domains: Sequence[int],
        log_masses: Mapping[Assignment, float],
        params: Mapping[str, float] | None = None,
        kernels: Sequence[Kernel] | None = None,
        islands: Mapping[Island, Sequence[int]] | None = None,
        bridge: int | None = None,
    ):
        if not log_masses:
            raise EmptySupportError(name)

        self.name = name
        self.n = n
        self.domains = tuple(domains)
        self.num_vars = len(self.domains)
        self.states: tuple[Assignment, ...] = tuple(log_masses)
        self.index = {state: i for i, state in enumerate(self.states)}
        self.log_mass = np.fromiter(log_masses.values(), dtype=float, count=len(self.states))
        self.log_mass.setflags(write=False)
        self.params = dict(params or {})

        weights = np.exp(self.log_mass - self.log_mass.max())
        self.pi = Distribution(weights / weights.sum())

        self._slices = [self._slice_ids(var) for var in range(self.num_vars)]
        self._conditionals = [self._conditional(ids) for ids in self._slices]

        self.exact_conditionals = kernels is None
        if kernels is not None:
            if len(kernels) != self.num_vars:
                raise DimensionMismatchError(len(kernels), self.num_vars)
            self.__dict__["kernels"] = list(kernels)

        self.islands = None
        if islands is not None:
            self.islands = {island: np.asarray(ids, dtype=int) for island, ids in islands.items()}
        self.bridge = bridge

        logger.debug(f"Built {self!r}")

    # ============================= slices =============================
    def _slice_ids(self, var: int) -> np.ndarray:
        keys: dict[Assignment, int] = {}
        ids = np.empty(len(self.states), dtype=np.intp)
        for i, state in enumerate(self.states):
            key = state[:var] + state[var + 1 :]
            ids[i] = keys.setdefault(key, len(keys))
        return ids

    def _conditional(self, ids: np.ndarray) -> np.ndarray:
        """
        Probability of every state given its slice for one variable.
        """
        peak = np.full(ids.max() + 1, -np.inf)
        np.maximum.at(peak, ids, self.log_mass)
        weights = np.exp(self.log_mass - peak[ids])
        totals = np.bincount(ids, weights=weights)
        return weights / totals[ids]

    # ============================= kernels =============================
    @cached_property
    def kernels(self) -> list[Kernel]:
        """
        Dense kernel P_i for every variable, built on first access.
        """
        logger.debug(f"Materialising {self.num_vars} dense kernels of size {self.size}")
        return [
            Kernel(np.where(ids[:, None] == ids[None, :], cond[None, :], 0.0))
            for ids, cond in zip(self._slices, self._conditionals)
        ]

    def resample(self, mu: Distribution, var: int) -> Distribution:
        """
        Law after resampling variable ``var`` from ``mu``.

        Args:
            mu (Distribution): Current law.
            var (int): Zero-based variable index.

        Returns:
            Distribution: mu P_var.
        """
        if mu.dim != self.size:
            raise DimensionMismatchError(mu.dim, self.size)
        return Distribution(self.resample_probs(mu.probs, var), validate=False)

    def resample_probs(self, probs: np.ndarray, var: int) -> np.ndarray:
        if not self.exact_conditionals:
            return probs @ self.kernels[var].rows
        ids = self._slices[var]
        return np.bincount(ids, weights=probs, minlength=ids.max() + 1)[ids] * self._conditionals[var]

    def resample_random_probs(self, probs: np.ndarray) -> np.ndarray:
        """
        One random-scan step: the average of resampling every variable.
        """
        if not self.exact_conditionals:
            return probs @ self.random_scan_rows
        stacked_ids, stacked_cond = self._stacked
        slice_mass = np.bincount(stacked_ids.ravel(), weights=np.tile(probs, self.num_vars))
        return (slice_mass[stacked_ids] * stacked_cond).mean(axis=0)

    @cached_property
    def _stacked(self) -> tuple[np.ndarray, np.ndarray]:
        offsets = np.cumsum([0] + [ids.max() + 1 for ids in self._slices[:-1]])
        stacked_ids = np.stack([ids + offset for ids, offset in zip(self._slices, offsets)])
        return stacked_ids, np.stack(self._conditionals)

    @cached_property
    def random_scan_rows(self) -> np.ndarray:
        return np.mean([kernel.rows for kernel in self.kernels], axis=0)

    # ============================= quantities =============================
    @property
    def size(self) -> int:
        return len(self.states)

    @property
    def mass(self) -> np.ndarray:
        return np.exp(self.log_mass)

    @property
    def pi_min(self) -> float:
        return self.pi.min

    @cached_property
    def holding_probability(self) -> float:
        """
        gamma = min over states x and variables i of P_i(x, x).
        """
        if self.exact_conditionals:
            return float(min(cond.min() for cond in self._conditionals))
        return float(min(np.diag(kernel.rows).min() for kernel in self.kernels))

    def state_id(self, assignment: Sequence[int]) -> int:
        return self.index[tuple(assignment)]

    def island_mass(self, mu: Distribution, island: Island) -> float:
        """
        Mass that ``mu`` puts on one island of a two-islands model.

        Raises:
            NotTwoIslandsError: If the model has no islands.
        """
        if self.islands is None:
            raise NotTwoIslandsError(self.name)
        return float(mu.probs[self.islands[Island(island)]].sum())

    def describe(self) -> dict:
        return {
            "name": self.name,
            "n": self.n,
            "num_vars": self.num_vars,
            "num_states": self.size,
            "params": self.params,
            "pi_min": self.pi_min,
            "holding_probability": self.holding_probability,
            "exact_conditionals": self.exact_conditionals,
        }

    def __repr__(self):
        return f"<GibbsModel {self.name} n={self.n} states={self.size}>"

    def __str__(self):
        return self.name
