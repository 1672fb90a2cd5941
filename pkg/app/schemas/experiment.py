import logging
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.choices import ExperimentId, NamedPermutation
from app.config import DEFAULT_EPSILON, FIG3B_ITERATIONS, FIG3B_RECORD_EVERY, LOG_LEVEL, MAX_STEPS, WORKERS

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("EXPERIMENT SCHEMAS")


class PermutationPolicy(BaseModel):
    """
    Represents which scan orders an experiment evaluates.

    Attributes:
        kind (str): "all", "sample" or "named".
        count (int | None): Number of sampled permutations.
        seed (int): Seed of the sampling generator.
        names (list[NamedPermutation]): Named permutations to evaluate.
        override_enumeration_limit (bool): Allow "all" above the enumeration limit.
    """

    model_config = ConfigDict(frozen=True, title="Permutation Policy")

    kind: Literal["all", "sample", "named"] = Field("all", title="Kind")
    count: int | None = Field(None, title="Sample Count", ge=1, examples=[1000])
    seed: int = Field(0, title="Seed", ge=0, examples=[42])
    names: list[NamedPermutation] = Field(default_factory=list, title="Names", examples=[["best", "worst"]])
    override_enumeration_limit: bool = Field(False, title="Override Enumeration Limit")

    @model_validator(mode="after")
    def check_kind(self):
        if self.kind == "sample" and self.count is None:
            raise ValueError("a sample policy needs a count")
        if self.kind == "named" and not self.names:
            raise ValueError("a named policy needs at least one name")
        return self

    @classmethod
    def sample(cls, count: int, seed: int = 0) -> "PermutationPolicy":
        return cls(kind="sample", count=count, seed=seed)


class ExperimentSpec(BaseModel):
    """
    Represents one harness run.

    Attributes:
        experiment (ExperimentId): Which experiment.
        models (list[str]): Model names.
        n_range (list[int]): Sizes to evaluate, non-empty.
        epsilon (float): Mixing threshold in (0, 1).
        policy (PermutationPolicy): Scan orders to evaluate.
        max_steps (int): Mixing-time cap.
        workers (int): Worker processes for permutation sweeps.
        M (float | None): Prior strength override.
        bridge_mass (float | None): Bridge mass override.
        iterations (int): Horizon of the fig3b trajectories.
        every (int): fig3b recording interval.
        output (Path | None): File for one table or directory for several; nothing is written when omitted.
    """

    model_config = ConfigDict(frozen=True, title="Experiment Spec")

    experiment: ExperimentId = Field(..., title="Experiment", examples=[ExperimentId.FIG3C])
    models: list[str] = Field(..., title="Models", min_length=1, examples=[["seq-deps"]])
    n_range: list[int] = Field(..., title="Sizes", min_length=1, examples=[[7]])
    epsilon: float = Field(DEFAULT_EPSILON, title="Epsilon", gt=0, lt=1)
    policy: PermutationPolicy = Field(default_factory=PermutationPolicy, title="Permutation Policy")
    max_steps: int = Field(MAX_STEPS, title="Step Cap", ge=0)
    workers: int = Field(WORKERS, title="Workers", ge=1)
    M: float | None = Field(None, title="Prior Strength", gt=0)
    bridge_mass: float | None = Field(None, title="Bridge Mass", gt=0)
    iterations: int = Field(FIG3B_ITERATIONS, title="Iterations", ge=1, examples=[1_000_000])
    every: int = Field(FIG3B_RECORD_EVERY, title="Record Every", ge=1, examples=[100])
    output: Path | None = Field(None, title="Output Path")

    @model_validator(mode="after")
    def check_sizes(self):
        if any(n < 1 for n in self.n_range):
            raise ValueError("sizes must be at least 1")
        return self
