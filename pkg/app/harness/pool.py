"""
Parallel mixing-time sweeps over scan orders.

Tasks carry the model's registry key instead of the model, so every worker
process rebuilds each model once through the registry cache. Results come
back in submission order, so the output does not depend on scheduling.
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ProcessPoolExecutor
from typing import NamedTuple

from app.chain import mixing_time
from app.config import LOG_LEVEL
from app.scan.permutations import Permutation
from app.scan.schedule import systematic_schedule
from app.zoo.registry import build_model

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("HARNESS")

CHUNK = 64


class ModelKey(NamedTuple):
    name: str
    n: int
    M: float | None = None
    bridge_mass: float | None = None

    def build(self):
        return build_model(self.name, self.n, self.M, self.bridge_mass)


class SweepResult(NamedTuple):
    permutation: Permutation
    t_mix: int
    capped: bool


def _task(args: tuple[ModelKey, Permutation, float, int]) -> SweepResult:
    key, permutation, epsilon, max_steps = args
    model = key.build()
    result = mixing_time(systematic_schedule(model, permutation), model.pi, epsilon, max_steps)
    return SweepResult(permutation, result.t_mix, result.capped)


def sweep_permutations(
    key: ModelKey,
    permutations: Sequence[Permutation],
    epsilon: float,
    max_steps: int,
    workers: int = 1,
) -> list[SweepResult]:
    """
    Systematic-scan mixing time of every permutation, in the given order.

    Args:
        key (ModelKey): Registry key of the model.
        permutations (Sequence[Permutation]): Zero-based scan orders.
        epsilon (float): Mixing threshold.
        max_steps (int): Step cap per permutation.
        workers (int): Worker processes; 1 runs in this process.

    Returns:
        list[SweepResult]: One result per permutation, indexed like ``permutations``.
    """
    tasks = [(key, tuple(permutation), epsilon, max_steps) for permutation in permutations]
    logger.info(f"Sweeping {len(tasks)} permutations of {key.name} n={key.n} on {workers} worker(s)")

    if workers <= 1 or len(tasks) <= CHUNK:
        results = [_task(task) for task in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(_task, tasks, chunksize=CHUNK))

    capped = sum(result.capped for result in results)
    if capped:
        logger.warning(f"{capped} permutation(s) hit the step cap of {max_steps}")
    return results
