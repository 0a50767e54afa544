"""Exact arithmetic for Hessian-nilpotent polynomials and their inversion pairs.

Everything is computed over the Gaussian rationals; there is no floating
point anywhere.  The public surface re-exports the polynomial core, the
differential-operator calculus, the nilpotency criteria, the deformed
inversion pairs, the isotropic generator constructions, and the vanishing
experiment harness.
"""

from .gaussrat import GaussianRational, gr
from .poly import Poly, exp_truncated, format_poly, parse
from .tgraded import TGraded, compose_poly, exp_tgraded
from .diffops import (
    PolyMatrix,
    PolyVector,
    apply_D,
    compositions,
    grad,
    grad_pair,
    hessian,
    jacobian,
    jacobian_det,
    kfactorial_fD_identity,
    lambda_op,
    laplacian,
    laplacian_iter,
    laplacian_product_expansion,
    leibniz_identity_check,
    mixed_partial_pair,
    multinomial,
    partial,
    partial_multi,
    poly_det,
    sigma_squared,
)
from .nilpotency import CriterionMismatchError, HNReport, is_hn, laplacian_powers, trace_powers
from .inversion import (
    DeformedPair,
    HNRequiredError,
    OrderViolationError,
    binomial_identity_check,
    burgers_residual,
    compose_check,
    deg_t,
    exp_formula_check,
    exp_tilde_check,
    first_vanishing_index,
    heat_residual,
    higher_dt_power_check,
    invert_closed,
    invert_fixed_point,
    invert_general,
    invert_hn,
    pair_from_fixed_point,
    potential_from_gradient,
    power_flow_check,
    qt_power,
)
from .generators import (
    GeneratorTheoremError,
    IsotropicSet,
    IsotropyViolation,
    OrthogonalityViolation,
    PsiData,
    bilinear,
    crit2_check,
    linear_form,
    pg_construction,
    ph_construction,
    psi_data,
    sample_isotropic,
    scalar_det,
    ug_construction,
    w_construction,
    w_construction_unchecked,
    w_tilde_construction,
)
from .vanishing import (
    ConfigError,
    ExperimentConfig,
    TheoremCheckError,
    VanishingReport,
    alpha_bound,
    build_member,
    emit_report,
    isotropy_check,
    load_report_json,
    pd_qt_check,
    render_report,
    run_vanishing,
    run_vanishing_full,
)

__version__ = "0.1.0"

__all__ = [
    "GaussianRational",
    "gr",
    "Poly",
    "parse",
    "format_poly",
    "exp_truncated",
    "TGraded",
    "compose_poly",
    "exp_tgraded",
    "partial",
    "partial_multi",
    "laplacian",
    "laplacian_iter",
    "grad",
    "grad_pair",
    "lambda_op",
    "sigma_squared",
    "apply_D",
    "mixed_partial_pair",
    "compositions",
    "multinomial",
    "leibniz_identity_check",
    "laplacian_product_expansion",
    "kfactorial_fD_identity",
    "PolyVector",
    "PolyMatrix",
    "poly_det",
    "hessian",
    "jacobian",
    "jacobian_det",
    "HNReport",
    "is_hn",
    "trace_powers",
    "laplacian_powers",
    "CriterionMismatchError",
    "DeformedPair",
    "OrderViolationError",
    "HNRequiredError",
    "invert_general",
    "invert_hn",
    "invert_closed",
    "invert_fixed_point",
    "pair_from_fixed_point",
    "potential_from_gradient",
    "deg_t",
    "first_vanishing_index",
    "compose_check",
    "burgers_residual",
    "heat_residual",
    "exp_formula_check",
    "exp_tilde_check",
    "qt_power",
    "power_flow_check",
    "higher_dt_power_check",
    "binomial_identity_check",
    "GeneratorTheoremError",
    "IsotropicSet",
    "IsotropyViolation",
    "OrthogonalityViolation",
    "PsiData",
    "bilinear",
    "linear_form",
    "scalar_det",
    "w_construction",
    "w_construction_unchecked",
    "w_tilde_construction",
    "ug_construction",
    "pg_construction",
    "ph_construction",
    "psi_data",
    "crit2_check",
    "sample_isotropic",
    "alpha_bound",
    "ExperimentConfig",
    "VanishingReport",
    "ConfigError",
    "TheoremCheckError",
    "build_member",
    "run_vanishing",
    "run_vanishing_full",
    "isotropy_check",
    "pd_qt_check",
    "emit_report",
    "render_report",
    "load_report_json",
]
