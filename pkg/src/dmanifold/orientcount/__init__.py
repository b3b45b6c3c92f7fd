"""Orientation signs and signed zero counts."""

from .core import (
    CountCertificate,
    DegenerateZero,
    OrientedStdModel,
    count_real_roots,
    degree_1d,
    direct_sum_sequence,
    direct_sum_sign,
    exact_seq_sign,
    fibre_convention,
    intersection_number,
    orient_fibre_product,
    reverse,
    signed_count,
    sturm_sequence,
)

__all__ = [name for name in dir() if not name.startswith("_")]
