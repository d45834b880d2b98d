"""Affine normal descent."""

from ._yand import (
    Problem,
    YandError,
    affine_normal,
    affine_scaled,
    catalog,
    catalog_names,
    descent_direction,
    newton_direction,
    run,
    run_invariance,
    slice_centroid_direction,
    verify_derivatives,
)

__all__ = [
    "Problem",
    "YandError",
    "affine_normal",
    "affine_scaled",
    "catalog",
    "catalog_names",
    "descent_direction",
    "newton_direction",
    "run",
    "run_invariance",
    "slice_centroid_direction",
    "verify_derivatives",
]
