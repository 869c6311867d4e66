"""Rényi entropy power inequalities: weights, constants and checks."""

from repi.core.epi.constants import (
    LogConcaveConstants,
    Objective,
    a_of_lambda,
    alpha_bm,
    alpha_li,
    c_bobkov_chistyakov,
    c_new_repi,
    c_ram_sason,
    lambda_minimize,
    logconcave_constants,
)
from repi.core.epi.epi import (
    check_dct,
    check_linearized,
    check_repialpha,
    check_repic,
    check_repig,
    check_unified,
    gaussian_extremal_bound,
    linearized_bound,
    linearized_companion,
    linearized_gap,
    logconcavity_gate,
    tolerance,
)
from repi.core.epi.weights import (
    LambdaWeights,
    conjugate,
    lambda_from_orders,
    orders_from_lambda,
    shannon_entropy_of_weights,
    snap_orders,
)

__all__ = [
    "LambdaWeights",
    "conjugate",
    "lambda_from_orders",
    "orders_from_lambda",
    "snap_orders",
    "shannon_entropy_of_weights",
    "a_of_lambda",
    "c_ram_sason",
    "c_bobkov_chistyakov",
    "alpha_li",
    "alpha_bm",
    "c_new_repi",
    "LogConcaveConstants",
    "logconcave_constants",
    "Objective",
    "lambda_minimize",
    "tolerance",
    "linearized_gap",
    "linearized_bound",
    "gaussian_extremal_bound",
    "check_dct",
    "check_repig",
    "check_linearized",
    "logconcavity_gate",
    "check_repic",
    "check_repialpha",
    "check_unified",
    "linearized_companion",
]
