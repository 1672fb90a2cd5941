"""
Numerical checks of the conductance comparison between random and systematic scan.
"""

import logging
import math
from collections.abc import Sequence

from app.chain import Distribution, HomogeneousChain, Kernel, lazy_kernel, mixing_time
from app.conductance.augmented import augment_random, augment_systematic
from app.conductance.flow import chain_conductance
from app.config import DEFAULT_EPSILON, EXACT_CONDUCTANCE_LIMIT, LOG_LEVEL, MAX_STEPS, TOLERANCE
from app.exceptions.chain import EpsilonRangeError
from app.exceptions.conductance import BoundDomainError, MixingCapExceededError, StateSpaceTooLargeError
from app.scan.permutations import all_permutations, check_permutation, format_permutation
from app.scan.schedule import random_scan_kernel, random_schedule, systematic_schedule
from app.schemas.bounds import BoundReport, Inequality
from app.zoo.gibbs import GibbsModel

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("BOUNDS")


def _case(model: GibbsModel, permutation: Sequence[int] | None = None) -> str:
    label = f"{model.name} n={model.n}"
    if permutation is not None:
        label += f" perm={format_permutation(permutation)}"
    return label


def _check_augmented_size(model: GibbsModel) -> None:
    size = model.size * model.num_vars
    if size > EXACT_CONDUCTANCE_LIMIT:
        raise StateSpaceTooLargeError(size, EXACT_CONDUCTANCE_LIMIT)


def _check_epsilon(epsilon: float) -> None:
    if not 0 < epsilon < 0.5:
        raise EpsilonRangeError(epsilon, upper=0.5)


def _measured(process, pi: Distribution, epsilon: float, label: str, max_steps: int) -> int:
    result = mixing_time(process, pi, epsilon, max_steps)
    if result.capped:
        raise MixingCapExceededError(label, max_steps)
    return result.t_mix


def verify_lemma1(model: GibbsModel, permutation: Sequence[int]) -> BoundReport:
    """
    Checks (gamma / 2n) Phi_RS-A <= Phi_SS-A <= Phi_RS with exact conductances.

    Args:
        model (GibbsModel): A model whose augmented space has at most 24 states.
        permutation (Sequence[int]): Zero-based systematic scan order.

    Returns:
        BoundReport: gamma, pi_min, the three conductances and both inequalities.

    Raises:
        StateSpaceTooLargeError: If |Omega| * n exceeds 24.
        InvalidPermutationError: If ``permutation`` is invalid.
    """
    order = check_permutation(permutation, model.num_vars)
    _check_augmented_size(model)

    gamma = model.holding_probability
    phi_rs, _ = chain_conductance(model.pi, random_scan_kernel(model))
    random_augmented = augment_random(model)
    phi_rs_a, _ = chain_conductance(random_augmented.pi, random_augmented.kernel)
    systematic_augmented = augment_systematic(model, order)
    phi_ss_a, _ = chain_conductance(systematic_augmented.pi, systematic_augmented.kernel)

    n = model.num_vars
    return BoundReport(
        case=_case(model, order),
        quantities={
            "gamma": gamma,
            "pi_min": model.pi_min,
            "phi_rs": phi_rs,
            "phi_rs_a": phi_rs_a,
            "phi_ss_a": phi_ss_a,
        },
        inequalities=[
            Inequality.check("lemma1-lower", gamma / (2 * n) * phi_rs_a, phi_ss_a),
            Inequality.check("lemma1-upper", phi_ss_a, phi_rs),
        ],
    )


def theorem2_bounds(phi_star: float, pi_min: float, epsilon: float) -> tuple[float, float]:
    """
    Conductance bracket on the mixing time of a lazy or reversible chain.

    lower = (1/2 - epsilon) / Phi* and upper = (2 / Phi*^2) ln(1 / (epsilon pi_min)).

    Raises:
        BoundDomainError: If Phi* or pi_min is outside (0, 1].
        EpsilonRangeError: If epsilon is outside (0, 1/2).
    """
    if not 0 < phi_star <= 1 + TOLERANCE:
        raise BoundDomainError("phi_star", phi_star, "0 < phi_star <= 1")
    if not 0 < pi_min <= 1:
        raise BoundDomainError("pi_min", pi_min, "0 < pi_min <= 1")
    _check_epsilon(epsilon)

    lower = (0.5 - epsilon) / phi_star
    upper = 2.0 / phi_star**2 * math.log(1.0 / (epsilon * pi_min))
    return lower, upper


def _bracket(name: str, kernel: Kernel, pi: Distribution, epsilon: float, max_steps: int):
    phi_star, _ = chain_conductance(pi, kernel)
    lower, upper = theorem2_bounds(phi_star, pi.min, epsilon)
    t_mix = _measured(HomogeneousChain(kernel), pi, epsilon, name, max_steps)
    quantities = {f"phi_{name}": phi_star, f"t_mix_{name}": t_mix, f"lower_{name}": lower, f"upper_{name}": upper}
    inequalities = [
        Inequality.check(f"theorem2-{name}-lower", lower, t_mix),
        Inequality.check(f"theorem2-{name}-upper", t_mix, upper),
    ]
    return quantities, inequalities


def verify_theorem2(
    model: GibbsModel,
    permutation: Sequence[int],
    epsilon: float = DEFAULT_EPSILON,
    max_steps: int = MAX_STEPS,
) -> BoundReport:
    """
    Checks the conductance bracket for lazy random scan on the states, lazy
    augmented systematic scan and plain random scan on the states.

    Raises:
        StateSpaceTooLargeError: If |Omega| * n exceeds 24.
        MixingCapExceededError: If a mixing time is not reached within ``max_steps``.
    """
    order = check_permutation(permutation, model.num_vars)
    _check_augmented_size(model)
    _check_epsilon(epsilon)

    plain = random_scan_kernel(model)
    systematic = augment_systematic(model, order)
    chains = [
        ("lazy_random", lazy_kernel(plain), model.pi),
        ("lazy_systematic_augmented", systematic.lazy_kernel, systematic.pi),
        ("random", plain, model.pi),
    ]

    quantities = {"pi_min": model.pi_min, "epsilon": epsilon}
    inequalities = []
    for name, kernel, pi in chains:
        found, checks = _bracket(name, kernel, pi, epsilon, max_steps)
        quantities.update(found)
        inequalities.extend(checks)
    return BoundReport(case=_case(model, order), quantities=quantities, inequalities=inequalities)


def verify_theorem1(
    model: GibbsModel,
    permutation: Sequence[int],
    epsilon: float = DEFAULT_EPSILON,
    max_steps: int = MAX_STEPS,
) -> BoundReport:
    """
    Checks both relative mixing-time inequalities between plain random scan R
    and lazy augmented systematic scan S:

        (1/2 - eps)^2 t(R) <= 2 t(S)^2 ln(1 / (eps pi_min))
        (1/2 - eps)^2 t(S) <= (8 n^2 / gamma^2) t(R)^2 ln(1 / (eps pi_min))

    The per-step systematic mixing time on the states is reported alongside.

    Raises:
        EpsilonRangeError: If epsilon is outside (0, 1/2).
        MixingCapExceededError: If t(R) or t(S) is not reached within ``max_steps``.
    """
    order = check_permutation(permutation, model.num_vars)
    _check_epsilon(epsilon)

    t_random = _measured(random_schedule(model), model.pi, epsilon, "random scan", max_steps)
    systematic = augment_systematic(model, order)
    t_systematic = _measured(
        HomogeneousChain(systematic.lazy_kernel), systematic.pi, epsilon, "lazy augmented systematic scan", max_steps
    )
    per_step = mixing_time(systematic_schedule(model, order), model.pi, epsilon, max_steps)

    n, gamma, pi_min = model.num_vars, model.holding_probability, model.pi_min
    log_term = math.log(1.0 / (epsilon * pi_min))
    scale = (0.5 - epsilon) ** 2

    return BoundReport(
        case=_case(model, order),
        quantities={
            "gamma": gamma,
            "pi_min": pi_min,
            "epsilon": epsilon,
            "t_mix_random": t_random,
            "t_mix_lazy_systematic_augmented": t_systematic,
            "t_mix_systematic_states": per_step.t_mix,
            "systematic_states_capped": float(per_step.capped),
        },
        inequalities=[
            Inequality.check("theorem1-random", scale * t_random, 2 * t_systematic**2 * log_term),
            Inequality.check(
                "theorem1-systematic",
                scale * t_systematic,
                8 * n**2 / gamma**2 * t_random**2 * log_term,
            ),
        ],
    )


def verify_upper_conductance(model: GibbsModel) -> BoundReport:
    """
    Checks Phi_SS-A <= Phi_RS for every scan order of a model.

    Raises:
        StateSpaceTooLargeError: If |Omega| * n exceeds 24.
    """
    _check_augmented_size(model)
    phi_rs, _ = chain_conductance(model.pi, random_scan_kernel(model))

    inequalities = []
    for order in all_permutations(model.num_vars):
        augmented = augment_systematic(model, order)
        phi_ss_a, _ = chain_conductance(augmented.pi, augmented.kernel)
        inequalities.append(Inequality.check(f"lemma1-upper[{format_permutation(order)}]", phi_ss_a, phi_rs))

    return BoundReport(
        case=_case(model),
        quantities={"phi_rs": phi_rs, "pi_min": model.pi_min},
        inequalities=inequalities,
    )
