from .core import (
    Distribution,
    HomogeneousChain,
    Kernel,
    StepProcess,
    apply,
    check_stationary,
    compose,
    evolve,
    identity,
    lazy_kernel,
    mixing_time,
    reversibility_residual,
    tv_distance,
    worst_case_tv,
)

__all__ = [
    "Distribution",
    "HomogeneousChain",
    "Kernel",
    "StepProcess",
    "apply",
    "check_stationary",
    "compose",
    "evolve",
    "identity",
    "lazy_kernel",
    "mixing_time",
    "reversibility_residual",
    "tv_distance",
    "worst_case_tv",
]
