"""Commutator norm bounds: operators, closed-form spectra, bound evaluators.

Thin python surface over the C++ core. Matrices are square 2-D float64
numpy arrays throughout.
"""

from cnb._core import (  # noqa: F401
    __version__,
    block_commutator_norm_sq,
    bw_bound,
    cdck_bound,
    cdck_vs_kyfan_gap,
    change_of_variables,
    check_genericity,
    closed_form_spectrum,
    commutator,
    companion_check,
    draw_matrix,
    elementary,
    evaluate_all,
    find_extremal,
    frobenius_norm_sq,
    infnorm_bound,
    kyfan_bound,
    offdiag_max_abs,
    orthogonalize_z,
    perturb_to_generic,
    pythagorean_split_check,
    run_campaign,
    run_compare,
    scalar_inequality_check,
    spectrum_report,
    svd,
    symmetric_eigen,
    t_apply,
    t_materialize,
    tilde_apply,
    tilde_materialize,
    trace_inner_product,
    triangular_split,
    certify_equality_pair,
)
