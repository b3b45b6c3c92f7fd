"""Fibre products of standard models over affine manifold targets."""

from .core import (
    FibreSquare,
    Identification,
    d_transverse_at,
    fibre_product_affine,
    identify,
    is_witness_zero,
    jacobian_det_at,
    swap,
    swap_identification,
    swap_involution_ok,
    validate_square,
    vdim_check,
)

__all__ = [name for name in dir() if not name.startswith("_")]
