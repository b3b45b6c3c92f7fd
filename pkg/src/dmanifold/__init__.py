"""Exact standard-model computations for derived manifolds and manifolds with corners."""

__version__ = "0.1.0"
