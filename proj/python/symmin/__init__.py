"""Eigenfunctions on the classical compact symmetric spaces."""

from ._symmin import (
    ConstraintError,
    PreconditionError,
    Space,
    Spec,
    UnknownCaseError,
    build,
    conformality,
    critical_gallery,
    default_params,
    eigen_residuals,
    evaluate,
    find_fiber_point,
    gallery_ids,
    gradient_norm,
    haar_sample,
    membership_residual,
    table,
    tension_field,
    validate,
)

__all__ = [
    "ConstraintError",
    "PreconditionError",
    "Space",
    "Spec",
    "UnknownCaseError",
    "build",
    "conformality",
    "critical_gallery",
    "default_params",
    "eigen_residuals",
    "evaluate",
    "find_fiber_point",
    "gallery_ids",
    "gradient_norm",
    "haar_sample",
    "membership_residual",
    "table",
    "tension_field",
    "validate",
]
