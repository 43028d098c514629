"""Skew morphisms of finite groups computed from skew product groups G = B<y>."""

from .perm import (
    ElementIndex,
    Permutation,
    PermGroup,
    brute_centralizer,
    brute_normalizer,
    compose,
    core,
    coset_action,
    cycle,
    is_normal,
)
from .factorization import (
    NotComplementary,
    NotCoreFree,
    SkewGeneratingPair,
    factor_element,
    induce_skew_morphism,
    induced_map_of,
    validate_pair,
)
from .skew import (
    ConjugationSupply,
    MapSupply,
    SkewMorphism,
    are_equivalent,
    automorphism_group_search,
    class_size,
    conjugate,
    kernel_is_largest_Y_normalized,
    reconstruct_skew_product,
    verify_axioms,
)
from .cayley import CycleCertificate, regular_cayley_certificate, verify_case6_cycle_set
from .oracle import brute_enumerate, pipeline_census
from .classify import CaseReport, Claim, Settings, enumerate_case, enumerate_noncorefree_sym5

__version__ = "0.1.0"

__all__ = [
    "ElementIndex", "Permutation", "PermGroup", "brute_centralizer", "brute_normalizer", "compose",
    "core", "coset_action", "cycle", "is_normal",
    "NotComplementary", "NotCoreFree", "SkewGeneratingPair", "factor_element", "induce_skew_morphism",
    "induced_map_of", "validate_pair",
    "ConjugationSupply", "MapSupply", "SkewMorphism", "are_equivalent", "automorphism_group_search",
    "class_size", "conjugate", "kernel_is_largest_Y_normalized", "reconstruct_skew_product",
    "verify_axioms",
    "CycleCertificate", "regular_cayley_certificate", "verify_case6_cycle_set",
    "brute_enumerate", "pipeline_census",
    "CaseReport", "Claim", "Settings", "enumerate_case", "enumerate_noncorefree_sym5",
]
