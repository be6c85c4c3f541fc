"""Numerical certification of starlikeness criteria on the unit disk."""

from .series import (
    DEFAULT_TRUNC_ORDER,
    EvaluationDomainError,
    NonFiniteCoefficientError,
    NonUnitDivisorError,
    ResonantExponentError,
    SchlichtCandidate,
    Series,
    SeriesError,
    add,
    as_schlicht,
    builtin_candidate,
    derivative,
    div,
    evaluate,
    exp_unit,
    integrate_offset,
    log_unit,
    make_series,
    max_coeff_diff,
    monomial,
    mul,
    pow_unit,
    scale,
    schlicht_from_tail,
    shift,
    tail_estimate,
)
from .functionals import (
    FunctionalKind,
    ParameterError,
    centered_quotient,
    convex_quotient,
    identity_a_residual,
    identity_b_residual,
    identity_sweep,
    lhs_a,
    lhs_b,
    mocanu_functional,
    random_candidate,
    starlike_quotient,
    unit_part,
    w_func,
    w_log_derivative,
)
from .criteria import (
    CriterionKind,
    CriterionParams,
    CriterionSpec,
    branch_bounds,
    build_spec,
    corollary_mapping,
    implied_rho,
)
from .extremals import (
    DegenerateExtremalError,
    ExtremalFamily,
    ExtremalParams,
    InadmissibleExtremalError,
    ProbeIdentityA,
    build_extremal,
    build_extremal_a,
    build_extremal_b,
    documented_grid,
    probe_identity_a,
    verify_identity_b,
)
from .oracle import (
    DegenerateSeriesError,
    JackResult,
    SamplingConfig,
    SupEstimate,
    Verdict,
    VerificationReport,
    check_criterion,
    jack_demo,
    min_real_on_disk,
    sup_on_disk,
)

__version__ = "0.1.0"
