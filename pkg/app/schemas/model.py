import logging
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator

from app.choices import BridgeMode
from app.config import LOG_LEVEL

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("MODEL SCHEMAS")


class BridgeEfficiencyReport(BaseModel):
    """
    Represents the probability that a visit to the bridge crosses to the other island.

    Attributes:
        scan (str): "random-scan" or the 1-based permutation, comma separated.
        efficiency (float): Crossing probability in [0, 1].
        mode (BridgeMode | None): Bridge mass regime, None for a measured model with another bridge mass.
        method (str): "analytic" or "measured".
        bridge_mass (float | None): Bridge mass of the measured model.
    """

    model_config = ConfigDict(frozen=True, title="Bridge Efficiency")

    scan: str = Field(..., title="Scan", examples=["random-scan", "1,4,2,5,3,6"])
    efficiency: float = Field(
        ...,
        title="Efficiency",
        description="Probability that the chain exits the bridge onto the opposite island.",
        ge=0,
        le=1,
        examples=[0.5, 0.6666666666666666],
    )
    mode: BridgeMode | None = Field(None, title="Bridge Mode", examples=[BridgeMode.NEGLIGIBLE])
    method: Literal["analytic", "measured"] = Field("analytic", title="Method")
    bridge_mass: float | None = Field(None, title="Bridge Mass", gt=0)


class ModelInfo(BaseModel):
    """
    Represents a summary of a built model.

    Attributes:
        name (str): Model name.
        n (int): Size parameter.
        num_vars (int): Number of variables.
        num_states (int): Size of the support.
        params (dict[str, float]): Prior strength and bridge mass where they apply.
        pi_min (float): Smallest stationary probability.
        holding_probability (float): min over x and i of P_i(x, x).
        exact_conditionals (bool): Whether every kernel is a single-site resample.
    """

    model_config = ConfigDict(title="Model Info")

    name: str = Field(..., title="Model Name", examples=["seq-deps"])
    n: int = Field(..., title="Size", ge=1, examples=[5])
    num_vars: int = Field(..., title="Variables", ge=1)
    num_states: int = Field(..., title="States", ge=1, examples=[6])
    params: dict[str, float] = Field(default_factory=dict, title="Parameters", examples=[{"M": 500.0}])
    pi_min: float = Field(..., title="Minimum Stationary Probability", gt=0, le=1)
    holding_probability: float = Field(..., title="Holding Probability", ge=0, le=1)
    exact_conditionals: bool = Field(True, title="Exact Conditionals")

    @field_validator("params")
    @classmethod
    def check_params(cls, value: dict[str, float]):
        if any(v <= 0 for v in value.values()):
            raise ValueError("model parameters must be positive")
        return value


class SweepSuccessOut(BaseModel):
    """
    Represents the probability that one identity-order sweep of seq-deps reaches s_n from s_0.
    """

    model_config = ConfigDict(frozen=True, title="Sweep Success")

    n: int = Field(..., title="Size", ge=1, examples=[5])
    M: float = Field(..., title="Prior Strength", gt=0, examples=[500.0])
    probability: float = Field(..., title="Probability", description="(M / (1 + M)) ** n.", ge=0, le=1)
