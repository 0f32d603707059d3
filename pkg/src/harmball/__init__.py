"""Harmonic function spaces on the unit ball.

Zonal and spherical-harmonic expansions, Poisson and Bergman kernels,
mixed-norm space norms, coefficient multipliers with their integral
criteria, and a harness that turns the resulting estimates into
pass/fail/inconclusive verdicts.
"""
from __future__ import annotations

from .errors import (
    CoefficientOverflowError,
    DomainError,
    HarmballError,
    PreconditionError,
    TruncationBudgetError,
    UnsupportedError,
)
from .fitting import FitResult, fit_exponent, tail_verdict
from .harmfun import (
    EvalPoint,
    GeneralExpansion,
    KernelFunction,
    ZonalExpansion,
    convolve_with_poisson,
    eval,
    frac_derivative,
    frac_integral,
    multiplier_apply,
    poisson_closed,
    poisson_series,
    test_function,
)
from .kernels import available_backends, backend, use_backend
from .multipliers import (
    THEOREMS,
    CriterionProfile,
    CriterionSpec,
    MultiplierSequence,
    catalog,
    criterion_exponent,
    criterion_profile,
    g_of_c,
    operator_ratio,
    test_family,
)
from .norms import NormResult, SpaceSpec, mean_Mp, means, norm
from .verify import CheckReport

__version__ = "0.1.0"

__all__ = [
    "CoefficientOverflowError", "DomainError", "HarmballError", "PreconditionError",
    "TruncationBudgetError", "UnsupportedError",
    "FitResult", "fit_exponent", "tail_verdict",
    "EvalPoint", "GeneralExpansion", "KernelFunction", "ZonalExpansion",
    "convolve_with_poisson", "eval", "frac_derivative", "frac_integral", "multiplier_apply",
    "poisson_closed", "poisson_series", "test_function",
    "available_backends", "backend", "use_backend",
    "THEOREMS", "CriterionProfile", "CriterionSpec", "MultiplierSequence", "catalog",
    "criterion_exponent", "criterion_profile", "g_of_c", "operator_ratio", "test_family",
    "NormResult", "SpaceSpec", "mean_Mp", "means", "norm",
    "CheckReport",
]
