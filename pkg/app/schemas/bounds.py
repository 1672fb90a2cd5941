import logging

import orjson
from pydantic import BaseModel, ConfigDict, Field, model_validator

from app.config import LOG_LEVEL, TOLERANCE

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("BOUND SCHEMAS")


class Inequality(BaseModel):
    """
    Represents one checked inequality lhs <= rhs.

    Attributes:
        name (str): Which inequality.
        lhs (float): Left-hand side.
        rhs (float): Right-hand side.
        holds (bool): lhs <= rhs within the tolerance.
        slack (float): rhs - lhs.
    """

    model_config = ConfigDict(frozen=True, title="Inequality")

    name: str = Field(..., title="Name", examples=["lemma1-lower"])
    lhs: float = Field(..., title="Left-hand Side")
    rhs: float = Field(..., title="Right-hand Side")
    holds: bool = Field(..., title="Holds")
    slack: float = Field(..., title="Slack", description="rhs - lhs; negative when violated.")

    @classmethod
    def check(cls, name: str, lhs: float, rhs: float) -> "Inequality":
        return cls(name=name, lhs=lhs, rhs=rhs, holds=lhs <= rhs + TOLERANCE, slack=rhs - lhs)

    @model_validator(mode="after")
    def check_holds(self):
        if self.holds != (self.lhs <= self.rhs + TOLERANCE):
            raise ValueError("holds must equal lhs <= rhs + tolerance")
        return self


class BoundReport(BaseModel):
    """
    Represents the quantities and inequalities of one bound verification.

    Attributes:
        case (str): Model, size and scan the report was computed for.
        quantities (dict[str, float]): Named reals such as conductances, gamma, pi_min and mixing times.
        inequalities (list[Inequality]): The checked inequalities.
    """

    model_config = ConfigDict(frozen=True, title="Bound Report")

    case: str = Field(..., title="Case", examples=["seq-deps n=3 perm=1,2,3"])
    quantities: dict[str, float] = Field(default_factory=dict, title="Quantities")
    inequalities: list[Inequality] = Field(default_factory=list, title="Inequalities")

    @property
    def holds(self) -> bool:
        return all(inequality.holds for inequality in self.inequalities)

    def rows(self) -> list[list]:
        """
        Flat key-value rows: one per quantity, then one per inequality with
        lhs, rhs, slack and holds.
        """
        rows = [[name, value] for name, value in self.quantities.items()]
        rows.extend(
            [inequality.name, inequality.lhs, inequality.rhs, inequality.slack, str(inequality.holds).lower()]
            for inequality in self.inequalities
        )
        return rows

    def to_json(self) -> bytes:
        return orjson.dumps(self.model_dump(), option=orjson.OPT_INDENT_2)
