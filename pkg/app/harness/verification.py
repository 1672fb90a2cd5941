import logging
from collections.abc import Iterable
from typing import NamedTuple

import numpy as np

from app.chain import check_stationary, reversibility_residual
from app.choices import ModelName, VerifyTarget
from app.conductance.augmented import augment_random, augment_systematic
from app.conductance.bounds import verify_lemma1, verify_theorem1, verify_theorem2, verify_upper_conductance
from app.config import DEFAULT_EPSILON, FUZZ_MODELS, FUZZ_SEED, LOG_LEVEL, MAX_STEPS, TOLERANCE
from app.exceptions import LabError
from app.exceptions.conductance import MixingCapExceededError, StateSpaceTooLargeError
from app.scan.permutations import all_permutations, format_permutation
from app.scan.schedule import random_scan_kernel
from app.schemas.bounds import BoundReport, Inequality
from app.zoo.fuzz import build_random_model
from app.zoo.gibbs import GibbsModel
from app.zoo.registry import build_model

logging.basicConfig(level=LOG_LEVEL)
logger = logging.getLogger("VERIFICATION")

DEFAULT_GRID = (
    (ModelName.SEQ_DEPS, 2),
    (ModelName.SEQ_DEPS, 3),
    (ModelName.PYRAMID, 2),
    (ModelName.PYRAMID, 3),
    (ModelName.TWO_ISLANDS_SIMPLIFIED, 2),
)
VERIFICATION_HEADER = ["case", "check", "name", "lhs", "rhs", "slack", "holds"]


class Skip(NamedTuple):
    case: str
    check: str
    reason: str


class VerificationReport(NamedTuple):
    """
    Aggregated verification outcome.

    Attributes:
        reports (list[tuple[str, BoundReport]]): (check name, report) per case.
        skips (list[Skip]): Cases that exceeded an exact-computation limit.
    """

    reports: list[tuple[str, BoundReport]]
    skips: list[Skip]

    @property
    def holds(self) -> bool:
        return all(report.holds for _, report in self.reports)

    @property
    def violations(self) -> list[tuple[str, str, Inequality]]:
        return [
            (check, report.case, inequality)
            for check, report in self.reports
            for inequality in report.inequalities
            if not inequality.holds
        ]

    def rows(self) -> list[list]:
        rows = []
        for check, report in self.reports:
            rows.extend(
                [report.case, check, ineq.name, ineq.lhs, ineq.rhs, ineq.slack, ineq.holds]
                for ineq in report.inequalities
            )
        rows.extend([skip.case, skip.check, "skipped", None, None, None, skip.reason] for skip in self.skips)
        return rows


def stationarity_report(model: GibbsModel, permutation) -> BoundReport:
    """
    Residuals ||pi P - pi||_inf of the model kernels, the random-scan kernel
    and both augmented chains, with detailed balance of every P_i.
    """
    kernels = [("random-scan", random_scan_kernel(model))]
    kernels.extend((f"P_{var + 1}", kernel) for var, kernel in enumerate(model.kernels))

    inequalities = [
        Inequality.check(f"stationary[{label}]", check_stationary(kernel, model.pi), TOLERANCE)
        for label, kernel in kernels
    ]
    inequalities.extend(
        Inequality.check(f"detailed-balance[{label}]", reversibility_residual(kernel, model.pi), TOLERANCE)
        for label, kernel in kernels
    )
    for augmented in (augment_random(model), augment_systematic(model, permutation)):
        label = f"stationary[augmented-{augmented.kind.value}]"
        inequalities.append(Inequality.check(label, augmented.stationarity_residual, TOLERANCE))

    return BoundReport(
        case=f"{model.name} n={model.n} perm={format_permutation(permutation)}",
        quantities={"states": model.size, "pi_min": model.pi_min, "gamma": model.holding_probability},
        inequalities=inequalities,
    )


def _targets(target: VerifyTarget) -> list[VerifyTarget]:
    if target is VerifyTarget.ALL:
        return [VerifyTarget.LEMMA1, VerifyTarget.THEOREM1, VerifyTarget.THEOREM2]
    return [target]


def fuzz_models(count: int = FUZZ_MODELS, seed: int = FUZZ_SEED) -> list[GibbsModel]:
    """Random small models, one per seed drawn from ``default_rng(seed)``."""
    seeds = np.random.default_rng(seed).integers(0, 2**32, size=count)
    return [build_random_model(int(model_seed)) for model_seed in seeds]


def run_verifications(
    target: VerifyTarget = VerifyTarget.ALL,
    grid: Iterable[tuple[ModelName | str, int]] = DEFAULT_GRID,
    epsilon: float = DEFAULT_EPSILON,
    max_steps: int = MAX_STEPS,
    fuzz: int = FUZZ_MODELS,
    fuzz_seed: int = FUZZ_SEED,
) -> VerificationReport:
    """
    Runs the bound checks on every permutation of every grid model, the
    stationarity checks, and the upper conductance bound on random models.

    Cases above an exact-computation limit are recorded as skips.

    Args:
        target (VerifyTarget): Which checks to run.
        grid (Iterable[tuple[ModelName | str, int]]): (model, n) pairs.
        epsilon (float): Mixing threshold for the mixing-time checks.
        max_steps (int): Mixing-time cap.
        fuzz (int): Number of random models, 0 to skip them.
        fuzz_seed (int): Seed of the random models.

    Returns:
        VerificationReport: All reports and skips.
    """
    target = VerifyTarget(target)
    checks = {
        VerifyTarget.LEMMA1: lambda model, order: verify_lemma1(model, order),
        VerifyTarget.THEOREM1: lambda model, order: verify_theorem1(model, order, epsilon, max_steps),
        VerifyTarget.THEOREM2: lambda model, order: verify_theorem2(model, order, epsilon, max_steps),
    }

    reports, skips = [], []
    for name, n in grid:
        model = build_model(name, n)
        for order in all_permutations(model.num_vars):
            case = f"{model.name} n={n} perm={format_permutation(order)}"
            reports.append(("stationarity", stationarity_report(model, order)))
            for check in _targets(target):
                try:
                    reports.append((check.value, checks[check](model, order)))
                except (StateSpaceTooLargeError, MixingCapExceededError) as error:
                    logger.warning(f"Skipped {check.value} on {case}: {error.msg}")
                    skips.append(Skip(case, check.value, error.msg))

    for model in fuzz_models(fuzz, fuzz_seed) if fuzz else []:
        try:
            reports.append(("fuzz-upper", verify_upper_conductance(model)))
            reports.append(("fuzz-stationarity", stationarity_report(model, tuple(range(model.num_vars)))))
        except LabError as error:
            logger.warning(f"Skipped fuzz model {model!r}: {error.msg}")
            skips.append(Skip(repr(model), "fuzz", error.msg))

    report = VerificationReport(reports, skips)
    logger.info(f"Verified {len(reports)} reports, {len(report.violations)} violation(s), {len(skips)} skip(s)")
    return report
