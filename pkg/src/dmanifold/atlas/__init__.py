"""Gluing data for standard-model charts and its algebraic checks."""

from .core import (
    DEFAULT_CAP,
    Atlas,
    AtlasReport,
    AtlasVerdict,
    Overlap,
    atlas_report,
    validate_overlap,
    validate_triple,
)

__all__ = [name for name in dir() if not name.startswith("_")]
