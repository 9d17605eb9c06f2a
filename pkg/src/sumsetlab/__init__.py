"""sumsetlab: exact verification of restricted-sumset lower bounds over
Z/pZ and the constant-term identities behind them.

The package enumerates restricted sumsets by brute force, evaluates the
corresponding lower-bound formulas with explicit hypothesis checking,
certifies bounds through nonvanishing polynomial coefficients, and
cross-checks the Dyson/Aomoto-style constant-term identities against
their factorial closed forms — all in exact integer and rational
arithmetic.
"""

from .ffield import (
    DivisionByZero,
    FieldElem,
    FieldMismatch,
    NotPrime,
    OutOfRange,
    PrimeField,
    is_prime,
)
from .mpoly import (
    LengthMismatch,
    NegativeExponentInput,
    SparsePoly,
    constant_term_laurent,
    sum_of_variables,
    targeted_coeff,
)
from .identities import (
    AomotoParams,
    DegreeInfeasible,
    HypothesisViolated,
    IdentityReport,
    InterpolationMismatch,
    LeadingCoefficientReport,
    NonIntegerResult,
    ParameterOutOfRange,
    TooFewVariables,
    aomoto_closed_form,
    aomoto_constant_term,
    aomoto_inverted_closed_form,
    chi,
    dyson_closed_form,
    dyson_constant_term,
    key_coefficient,
    key_coefficient_closed_form,
    leading_coefficient_check,
    zeilberger_coefficient,
)
from .sumsets import (
    BUDGET_ENV_VAR,
    BoundEntry,
    BoundReport,
    BudgetExceeded,
    CannotSatisfyHypothesis,
    CertificateReport,
    CoverageReport,
    CoverageSweepResult,
    DEFAULT_BUDGET,
    ExperimentTrial,
    InstanceFormatError,
    NonUniformForbidden,
    NotInShrinkRegime,
    SplitMix64,
    SumsetInstance,
    certificate_check,
    certificate_check_literal,
    compute_bounds,
    coverage_check,
    coverage_sweep,
    coverage_threshold,
    enumerate_restricted_sumset,
    instance_from_dict,
    instance_to_dict,
    load_instance,
    parameter_hypothesis_met,
    random_instance,
    run_experiment,
    shrink_sizes,
    uniform_forbidden,
)

__version__ = "0.1.0"

__all__ = [
    "AomotoParams",
    "BUDGET_ENV_VAR",
    "BoundEntry",
    "BoundReport",
    "BudgetExceeded",
    "CannotSatisfyHypothesis",
    "CertificateReport",
    "CoverageReport",
    "CoverageSweepResult",
    "DEFAULT_BUDGET",
    "DegreeInfeasible",
    "DivisionByZero",
    "ExperimentTrial",
    "FieldElem",
    "FieldMismatch",
    "HypothesisViolated",
    "IdentityReport",
    "InstanceFormatError",
    "InterpolationMismatch",
    "LeadingCoefficientReport",
    "LengthMismatch",
    "NegativeExponentInput",
    "NonIntegerResult",
    "NonUniformForbidden",
    "NotInShrinkRegime",
    "NotPrime",
    "OutOfRange",
    "ParameterOutOfRange",
    "PrimeField",
    "SparsePoly",
    "SplitMix64",
    "SumsetInstance",
    "TooFewVariables",
    "aomoto_closed_form",
    "aomoto_constant_term",
    "aomoto_inverted_closed_form",
    "certificate_check",
    "certificate_check_literal",
    "chi",
    "compute_bounds",
    "constant_term_laurent",
    "coverage_check",
    "coverage_sweep",
    "coverage_threshold",
    "dyson_closed_form",
    "dyson_constant_term",
    "enumerate_restricted_sumset",
    "instance_from_dict",
    "instance_to_dict",
    "is_prime",
    "key_coefficient",
    "key_coefficient_closed_form",
    "leading_coefficient_check",
    "load_instance",
    "parameter_hypothesis_met",
    "random_instance",
    "run_experiment",
    "shrink_sizes",
    "sum_of_variables",
    "targeted_coeff",
    "uniform_forbidden",
    "zeilberger_coefficient",
]
