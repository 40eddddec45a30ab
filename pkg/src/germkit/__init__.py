"""Finite Boolean inverse monoids, germ groupoids, and the bisection round-trip."""

__version__ = "0.1.0"

from germkit.inverse_core import (
    CompositionError,
    FiniteInverseMonoid,
    InputError,
    PartialBijection,
    SizeCapError,
    StructureError,
    all_partial_bijections,
    symmetric_inverse_count,
    symmetric_inverse_monoid,
    verify_boolean_inverse_monoid,
)
from germkit.stone import BooleanAlgebraView, Character, verify_stone_embedding
from germkit.germ import (
    FiniteGroupoid,
    Germ,
    GermGroupoid,
    all_bisections,
    alpha,
    basic_bisection,
    bisection_inverse,
    bisection_monoid,
    bisection_name,
    bisection_product,
    build_germ_groupoid,
    char_support,
    compose_germs,
    epsilon,
    equivalence_relation_groupoid,
    germ_equivalent,
    groupoid_isomorphic,
    groupoid_to_dot,
    groupoid_to_json,
    inverse_germ,
    is_bisection,
    pair_groupoid,
    unit_bisection,
    verify_ample_structure,
    verify_bisection_monoid,
    verify_epsilon_isomorphism,
    verify_germ_coherence,
    verify_intersection_lemma,
)
from germkit.coarse import (
    CoarseSpace,
    closure_entourage,
    coarse_groupoid,
    load_coarse_space,
    partial_translations,
    verify_translation_idempotents,
)

__all__ = [
    "BooleanAlgebraView",
    "Character",
    "CoarseSpace",
    "CompositionError",
    "FiniteGroupoid",
    "FiniteInverseMonoid",
    "Germ",
    "GermGroupoid",
    "InputError",
    "PartialBijection",
    "SizeCapError",
    "StructureError",
    "all_bisections",
    "all_partial_bijections",
    "alpha",
    "basic_bisection",
    "bisection_inverse",
    "bisection_monoid",
    "bisection_name",
    "bisection_product",
    "build_germ_groupoid",
    "char_support",
    "closure_entourage",
    "coarse_groupoid",
    "compose_germs",
    "epsilon",
    "equivalence_relation_groupoid",
    "germ_equivalent",
    "groupoid_isomorphic",
    "groupoid_to_dot",
    "groupoid_to_json",
    "inverse_germ",
    "is_bisection",
    "unit_bisection",
    "load_coarse_space",
    "pair_groupoid",
    "partial_translations",
    "symmetric_inverse_count",
    "symmetric_inverse_monoid",
    "verify_ample_structure",
    "verify_bisection_monoid",
    "verify_boolean_inverse_monoid",
    "verify_epsilon_isomorphism",
    "verify_germ_coherence",
    "verify_intersection_lemma",
    "verify_stone_embedding",
    "verify_translation_idempotents",
]
