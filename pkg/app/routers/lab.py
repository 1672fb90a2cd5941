import logging
from typing import Annotated

from fastapi import APIRouter, Path, Query, status

from app.chain import mixing_time
from app.choices import BridgeMode, ModelName
from app.config import API_MAX_STEPS, API_STATE_LIMIT, DEFAULT_EPSILON, LOG_LEVEL
from app.exceptions.model import StateLimitError
from app.scan.permutations import parse_permutation
from app.scan.schedule import lazy, random_schedule, systematic_schedule
from app.schemas.chain import MixingTimeOut
from app.schemas.model import BridgeEfficiencyReport, ModelInfo, SweepSuccessOut
from app.zoo.islands import bridge_efficiency, measure_bridge_efficiency
from app.zoo.registry import build_model, predicted_size
from app.zoo.sequence import sweep_success_probability

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("LAB API")

router = APIRouter(
    prefix="/lab",
    tags=["lab"],
)

SizeQuery = Annotated[int, Query(title="Size parameter", ge=1, le=64, examples=[5])]
PriorQuery = Annotated[float | None, Query(title="Prior strength, 100 * n by default", gt=0, examples=[500.0])]
BridgeQuery = Annotated[float | None, Query(title="Bridge mass of two-islands models", gt=0, examples=[0.1])]


def _guarded_model(name: str, n: int, M: float | None = None, bridge_mass: float | None = None):
    size = predicted_size(name, n)
    if size is not None and size > API_STATE_LIMIT:
        raise StateLimitError(name, size, API_STATE_LIMIT)
    return build_model(name, n, M, bridge_mass)


@router.get("/models/{name}", status_code=status.HTTP_200_OK, response_model=ModelInfo)
def model_info(
    name: Annotated[ModelName, Path(title="Model family")],
    n: SizeQuery,
    M: PriorQuery = None,
    bridge_mass: BridgeQuery = None,
):
    """
    Describes a model: variables, states, parameters, pi_min and holding probability.

    ### - path param `name`
    ### - query param `n`
    ### - query param `M`
    ### - query param `bridge_mass`
    """
    return ModelInfo(**_guarded_model(name.value, n, M, bridge_mass).describe())


@router.get("/mixing-time", status_code=status.HTTP_200_OK, response_model=MixingTimeOut)
def retrieve_mixing_time(
    model: Annotated[ModelName, Query(title="Model family", examples=["seq-deps"])],
    n: SizeQuery,
    perm: Annotated[
        str | None,
        Query(
            title="1-based comma-separated order or a permutation name; random scan when omitted",
            examples=["1,2,3"],
        ),
    ] = None,
    is_lazy: Annotated[bool, Query(alias="lazy", title="Hold with probability 1/2 at every step")] = False,
    epsilon: Annotated[float, Query(title="Mixing threshold", gt=0, lt=1, examples=[0.25])] = DEFAULT_EPSILON,
    M: PriorQuery = None,
    bridge_mass: BridgeQuery = None,
    max_steps: Annotated[int, Query(title="Step cap", ge=0, le=API_MAX_STEPS)] = API_MAX_STEPS,
):
    """
    Computes the exact worst-case mixing time of random or systematic scan.

    ### - query param `model`
    ### - query param `n`
    ### - query param `perm`
    ### - query param `lazy`
    ### - query param `epsilon`
    ### - query param `M`
    ### - query param `bridge_mass`
    ### - query param `max_steps`
    """
    built = _guarded_model(model.value, n, M, bridge_mass)
    if perm is None or perm == "random":
        schedule = random_schedule(built)
    else:
        schedule = systematic_schedule(built, parse_permutation(perm, built.name, built.num_vars))
    if is_lazy:
        schedule = lazy(schedule)
    if schedule.dim > API_STATE_LIMIT:
        raise StateLimitError(model.value, schedule.dim, API_STATE_LIMIT)

    result = mixing_time(schedule, schedule.pi, epsilon, max_steps)
    logger.info(f"Served mixing time {result.t_mix} for {schedule!r}")
    return MixingTimeOut(model=model.value, n=n, scan=schedule.describe(), space=schedule.space, result=result)


@router.get("/bridge-efficiency", status_code=status.HTTP_200_OK, response_model=BridgeEfficiencyReport)
def retrieve_bridge_efficiency(
    n: SizeQuery,
    perm: Annotated[
        str,
        Query(title="random, best, worst, alternating, blocked or a 1-based order", examples=["alternating"]),
    ] = "random",
    mode: Annotated[BridgeMode, Query(title="Bridge mass regime")] = BridgeMode.NEGLIGIBLE,
    bridge_mass: Annotated[
        float | None,
        Query(title="Measure on the full two-islands model with this bridge mass", gt=0, examples=[1.0]),
    ] = None,
):
    """
    Probability that a visit to the bridge exits onto the other island.

    ### - query param `n`
    ### - query param `perm`
    ### - query param `mode`
    ### - query param `bridge_mass`
    """
    order = None if perm == "random" else parse_permutation(perm, ModelName.TWO_ISLANDS.value, 2 * n)
    if bridge_mass is None:
        return bridge_efficiency(n, order, mode)
    return measure_bridge_efficiency(_guarded_model(ModelName.TWO_ISLANDS.value, n, bridge_mass=bridge_mass), order)


@router.get("/sweep-success", status_code=status.HTTP_200_OK, response_model=SweepSuccessOut)
def retrieve_sweep_success(n: SizeQuery, M: PriorQuery = None):
    """
    Probability that one identity-order sweep of seq-deps moves s_0 to s_n.

    ### - query param `n`
    ### - query param `M`
    """
    model = _guarded_model(ModelName.SEQ_DEPS.value, n, M)
    return SweepSuccessOut(n=n, M=model.params["M"], probability=sweep_success_probability(n, M))
