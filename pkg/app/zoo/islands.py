"""
Two-islands models and bridge efficiency.

Variables 0..n-1 are x_1..x_n and variables n..2n-1 are y_1..y_n. Island x
holds every state with at least one x true and every y false, island y the
mirror image, and the bridge is the all-false state.
"""

import itertools
import logging
import math
from collections.abc import Sequence

import numpy as np

from app.chain import Kernel
from app.choices import BridgeMode, Island
from app.config import LOG_LEVEL, NEGLIGIBLE_BRIDGE_MASS
from app.exceptions.model import NotTwoIslandsError
from app.scan.permutations import check_permutation
from app.schemas.model import BridgeEfficiencyReport
from app.zoo.gibbs import GibbsModel, check_parameter, check_size

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MODEL ZOO")

FULL = "two-islands"
SIMPLIFIED = "two-islands-simplified"


def block(var: int, n: int) -> Island:
    return Island.X if var < n else Island.Y


def _island_states(n: int, island: Island) -> list[tuple[int, ...]]:
    states = []
    for bits in itertools.product((0, 1), repeat=n):
        if any(bits):
            states.append(bits + (0,) * n if island is Island.X else (0,) * n + bits)
    return states


def _assemble(name, n, bridge_mass, x_states, y_states, kernels=None) -> GibbsModel:
    bridge_state = (0,) * (2 * n)
    log_masses = {bridge_state: math.log(bridge_mass)}
    log_masses.update(dict.fromkeys(x_states, 0.0))
    log_masses.update(dict.fromkeys(y_states, 0.0))
    return GibbsModel(
        name,
        n,
        [2] * (2 * n),
        log_masses,
        params={"bridge_mass": bridge_mass},
        kernels=kernels,
        islands={
            Island.X: range(1, 1 + len(x_states)),
            Island.Y: range(1 + len(x_states), 1 + len(x_states) + len(y_states)),
        },
        bridge=0,
    )


def build_two_islands(n: int, bridge_mass: float = 1.0) -> GibbsModel:
    """
    Builds the full two-islands model on 2n binary variables.

    Every island state has mass 1 and the bridge has mass ``bridge_mass``.
    State 0 is the bridge, followed by island x then island y.

    Args:
        n (int): Number of variables per island, at least 1.
        bridge_mass (float): Mass of the bridge state, 1.0 for the uniform model.

    Returns:
        GibbsModel: The model with 2(2^n - 1) + 1 states.

    Raises:
        ModelSizeError: If n < 1.
        ModelParameterError: If bridge_mass <= 0.
    """
    check_size(FULL, n)
    check_parameter(FULL, "bridge_mass", bridge_mass)
    return _assemble(FULL, n, bridge_mass, _island_states(n, Island.X), _island_states(n, Island.Y))


def build_two_islands_simplified(n: int, bridge_mass: float = NEGLIGIBLE_BRIDGE_MASS) -> GibbsModel:
    """
    Builds the reduced two-islands chain on the bridge and the 2n states adjacent to it.

    Islands mix instantly: with R the kernel that replaces any island state by
    the uniform law on that island's n single-true states, variable v steps with
    R P_v R, where P_v is the exact conditional on the reduced support. Each
    kernel stays stationary and reversible for the reduced distribution.

    Args:
        n (int): Number of variables per island, at least 1.
        bridge_mass (float): Mass of the bridge relative to an island state.

    Returns:
        GibbsModel: The model with 2n + 1 states and ``exact_conditionals`` False.
    """
    check_size(SIMPLIFIED, n)
    check_parameter(SIMPLIFIED, "bridge_mass", bridge_mass)

    eye = np.eye(2 * n, dtype=int)
    x_states = [tuple(row) for row in eye[:n]]
    y_states = [tuple(row) for row in eye[n:]]
    exact = _assemble(SIMPLIFIED, n, bridge_mass, x_states, y_states)

    smear = np.zeros((exact.size, exact.size))
    smear[0, 0] = 1.0
    for ids in exact.islands.values():
        smear[np.ix_(ids, ids)] = 1.0 / n

    kernels = [Kernel(smear @ kernel.rows @ smear) for kernel in exact.kernels]
    return _assemble(SIMPLIFIED, n, bridge_mass, x_states, y_states, kernels=kernels)


def _scan_label(permutation: Sequence[int] | None) -> str:
    if permutation is None:
        return "random-scan"
    return ",".join(str(var + 1) for var in permutation)


def bridge_efficiency(
    n: int,
    permutation: Sequence[int] | None,
    mode: BridgeMode = BridgeMode.NEGLIGIBLE,
) -> BridgeEfficiencyReport:
    """
    Exact probability that a visit to the bridge ends on the opposite island.

    Entry through the sampling of scan position k is weighted uniformly over k.
    With negligible bridge mass the next sampled variable decides the exit. With
    normal bridge mass every step leaves the bridge with probability 1/2, so
    the exit happens m steps later with probability 2^-m.

    Args:
        n (int): Number of variables per island.
        permutation (Sequence[int] | None): Zero-based scan order of the 2n variables, None for random scan.
        mode (BridgeMode): Bridge mass regime.

    Returns:
        BridgeEfficiencyReport: The efficiency with its scan and mode.

    Raises:
        ModelSizeError: If n < 1.
        InvalidPermutationError: If ``permutation`` is not a permutation of the 2n variables.
    """
    check_size(FULL, n)
    mode = BridgeMode(mode)

    if permutation is None:
        efficiency = 0.5
    else:
        order = check_permutation(permutation, 2 * n)
        period = 2 * n
        crossing = np.array(
            [
                [block(order[(k + m) % period], n) != block(order[k], n) for m in range(period + 1)]
                for k in range(period)
            ],
            dtype=float,
        )
        if mode is BridgeMode.NEGLIGIBLE:
            efficiency = crossing[:, 1].mean()
        else:
            weights = 0.5 ** np.arange(1, period + 1)
            efficiency = (crossing[:, 1:] @ weights).mean() / (1.0 - 0.5**period)

    return BridgeEfficiencyReport(
        scan=_scan_label(permutation),
        efficiency=float(efficiency),
        mode=mode,
        method="analytic",
    )


def measure_bridge_efficiency(model: GibbsModel, permutation: Sequence[int] | None) -> BridgeEfficiencyReport:
    """
    Bridge efficiency measured on a two-islands model's own kernels.

    Resampling variable v from the bridge keeps a fraction h_v of the mass on
    the bridge and sends c_v to the opposite island, so a visit that stays on
    the bridge for a whole scan period is a geometric series in the product
    of the h_v. Random scan uses the averages of h and c instead.

    Raises:
        NotTwoIslandsError: If the model has no islands.
        InvalidPermutationError: If ``permutation`` is not a permutation of the variables.
    """
    if model.islands is None:
        raise NotTwoIslandsError(model.name)

    n = model.n
    start = np.zeros(model.size)
    start[model.bridge] = 1.0
    exits = [model.resample_probs(start, var) for var in range(model.num_vars)]
    hold = np.array([probs[model.bridge] for probs in exits])
    lands = {island: np.array([probs[ids].sum() for probs in exits]) for island, ids in model.islands.items()}

    def opposite(entry: Island) -> np.ndarray:
        return lands[Island.Y if entry is Island.X else Island.X]

    if permutation is None:
        efficiency = np.mean([opposite(entry).mean() for entry in Island]) / (1.0 - hold.mean())
    else:
        order = check_permutation(permutation, model.num_vars)
        period = len(order)
        results = []
        for k in range(period):
            following = [order[(k + t) % period] for t in range(1, period + 1)]
            stay = hold[following]
            survive = np.concatenate(([1.0], np.cumprod(stay)[:-1]))
            results.append(survive @ opposite(block(order[k], n))[following] / (1.0 - stay.prod()))
        efficiency = np.mean(results)

    bridge_mass = model.params["bridge_mass"]
    mode = None
    if bridge_mass == 1.0:
        mode = BridgeMode.NORMAL
    elif bridge_mass <= NEGLIGIBLE_BRIDGE_MASS:
        mode = BridgeMode.NEGLIGIBLE

    logger.debug(f"Measured bridge efficiency {efficiency} on {model!r}")
    return BridgeEfficiencyReport(
        scan=_scan_label(permutation),
        efficiency=float(min(1.0, max(0.0, efficiency))),
        mode=mode,
        method="measured",
        bridge_mass=bridge_mass,
    )
