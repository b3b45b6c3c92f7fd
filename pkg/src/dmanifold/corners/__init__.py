"""Manifolds with corners on model domains: faces, corner functors, fixed loci."""

from .core import (
    BoundaryDecomposition,
    CornerFunctorImage,
    CornerMap,
    CornerModel,
    Face,
    FibreBoundary,
    FibreTerm,
    FixedLocus,
    GroupAction,
    GroupElement,
    MapFlags,
    PieceObject,
    Positive,
    Rejection,
    TransverseVerdict,
    Zero,
    boundary,
    boundary_decomposition,
    boundary_preimage,
    classify_map,
    compose_corner_maps,
    corner_counts_multiply,
    corner_functor,
    corner_target,
    corners,
    depth,
    fibre_boundary_terms,
    fixed_locus,
    functorial_on_pieces,
    product,
    product_order,
    transverse_check,
    validate_corner_map,
)

__all__ = [name for name in dir() if not name.startswith("_")]
