"""Standard-model d-manifolds over R^n with trivial obstruction bundles."""

from .core import (
    StdModel,
    StdOneMor,
    StdTwoMor,
    Verdict,
    WitnessSet,
    classify_morphism,
    compose_one,
    cotangent_complex,
    etale_at,
    exact_sequence_at,
    horizontal_compose,
    identity_one,
    is_equivalence_std,
    is_manifold,
    new_std_model,
    omega_of_morphism,
    one_mor_equal,
    resolve_base,
    two_mor_equal,
    validate_one_mor,
    validate_two_mor,
    vertical_compose,
    zero_two,
)

__all__ = [name for name in dir() if not name.startswith("_")]
