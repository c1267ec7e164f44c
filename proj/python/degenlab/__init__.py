"""Desk-scale numerical laboratory for a semilinear degenerate
reaction-diffusion problem on (-1, 1): weighted Sobolev norms,
interpolation/embedding inequality probes, the degenerate Robin operator,
nonlinearity bounds, and strict/strong solves with stability certificates.
"""

from degenlab._core import (  # noqa: F401
    A3BoundCheck,
    A3Report,
    A5SDCheck,
    BoundaryMode,
    CoefficientProfile,
    ConditionStatus,
    ConfigError,
    ConvergenceError,
    Degeneracy,
    DegeneracyReport,
    DiffusionCoefficient,
    DomainError,
    GridFunction,
    InequalityTrial,
    InitialDatum,
    Mesh,
    NemytskiiModel,
    ProblemSpec,
    RegularityClaim,
    RobinBC,
    SolveParams,
    SolveResult,
    SpaceTimeField,
    SpaceTimeFunction,
    StabilityCertificate,
    StrongSolveResult,
    TimeGrid,
    __version__,
    apply_phi,
    b_norm,
    check_A5_SD,
    check_gn_linf,
    check_gn_lp,
    check_sob1,
    check_sob2,
    check_sob3,
    classify,
    eval_a,
    eval_f,
    gn_alpha,
    gn_beta,
    h_norm,
    linf_norm,
    lipschitz_ratio,
    lp_norm,
    lp_qt_norm,
    make_mesh,
    midpoint_derivative,
    norm_1a,
    norm_2a,
    quad_integral,
    seminorm_1a,
    solve_strict,
    solve_strong,
    stability_gap,
    validate_A3,
    xi_a,
)
