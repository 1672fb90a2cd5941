from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.choices import ChainSpace
from app.config import TOLERANCE
from app.exceptions.chain import InvalidDistributionError


class MixingResult(BaseModel):
    """
    Represents the outcome of a worst-case mixing-time search.

    Attributes:
        t_mix (int): First step whose worst-case TV is at most epsilon (the last step searched if capped).
        epsilon (float): The threshold used.
        tv_trace (list[float]): Worst-case TV at steps 0..t_mix.
        capped (bool): Whether the threshold was not reached within max_steps.
    """

    model_config = ConfigDict(frozen=True, title="Mixing Result")

    t_mix: int = Field(
        ...,
        title="Mixing Time",
        description="Smallest t whose worst-case total variation is at most epsilon.",
        ge=0,
        examples=[5, 21],
    )
    epsilon: float = Field(..., title="Epsilon", gt=0, lt=1, examples=[0.25])
    tv_trace: list[float] = Field(
        ...,
        title="TV Trace",
        description="Worst-case total variation distance at steps 0..t_mix.",
    )
    capped: bool = Field(False, title="Capped")

    @model_validator(mode="after")
    def check_trace(self):
        """
        Validates the trace against the reported mixing time.

        Raises:
            InvalidDistributionError: If the trace leaves [0, 1] or misses the threshold.
        """
        if len(self.tv_trace) != self.t_mix + 1:
            raise InvalidDistributionError("trace length must be t_mix + 1")
        if any(tv < -TOLERANCE or tv > 1 + TOLERANCE for tv in self.tv_trace):
            raise InvalidDistributionError("TV values must lie in [0, 1]")
        if not self.capped and self.tv_trace[-1] > self.epsilon:
            raise InvalidDistributionError("uncapped trace must end at or below epsilon")
        return self


class MixingTimeOut(BaseModel):
    """
    Represents a served mixing-time query.

    Attributes:
        model (str): Model name.
        n (int): Size parameter.
        scan (str): "random", "systematic(1,2,...)", optionally prefixed with "lazy".
        space (ChainSpace): States or the augmented space.
        result (MixingResult): The mixing-time search.
    """

    model_config = ConfigDict(frozen=True, title="Mixing Time")

    model: str = Field(..., title="Model Name", examples=["seq-deps"])
    n: int = Field(..., title="Size", ge=1, examples=[5])
    scan: str = Field(..., title="Scan", examples=["random", "systematic(1,2,3)"])
    space: ChainSpace = Field(ChainSpace.STATES, title="Space")
    result: MixingResult = Field(..., title="Result")
