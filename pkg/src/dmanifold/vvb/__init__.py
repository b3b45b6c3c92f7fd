"""Virtual vector bundles: two-term complexes, their morphisms and 2-morphisms."""

from .base import BaseContext, PointSet, artinian_base, lift, per_point
from .core import (
    VVB,
    Flags,
    VVBMor,
    VVBTwo,
    Witness,
    classify,
    compose_mor,
    horizontal,
    identity_mor,
    is_equivalence,
    orientation_det,
    orientation_parity,
    rank,
    raw_orientation_det,
    two_mor_check,
    validate_mor,
    vertical,
    witness_identities,
    zero_two,
)

__all__ = [name for name in dir() if not name.startswith("_")]
