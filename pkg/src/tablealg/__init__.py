"""Exact engine for table algebras and association schemes."""

from .core import (
    ElementVector,
    TableAlgebra,
    multiply,
    order_and_sum,
    regular_representation,
    rescale,
    validate,
    validate_or_raise,
)
from .closed import (
    ClosedSubset,
    DoubleCosetPartition,
    closed_subset,
    closure,
    complex_product,
    double_cosets,
    enumerate_closed_subsets,
    quotient,
    stabilizer,
    subalgebra,
)
from .homs import (
    TableHomomorphism,
    canonical_epimorphism,
    find_isomorphism,
    first_isomorphism,
    kernel,
    make_homomorphism,
    mapped_closed,
)
from .wedge import (
    WedgeAlgebra,
    WedgeDecomposition,
    WedgeInput,
    recognize_wedge,
    verify_wedge_identities,
    wedge_input,
    wedge_product,
    wreath_product,
)
from .duality import (
    CharacterTable,
    DualAlgebra,
    character_table,
    character_product_coeffs,
    char_kernel,
    double_dual_isomorphic,
    dual_algebra,
    dual_of_wedge_check,
    dual_positivity_equivalence,
    dual_sufficiency_check,
    inner_product,
    irr_of_quotient,
    ker_closed,
    vanishing_check,
)
from .schemes import (
    AssociationScheme,
    SchemeEpimorphism,
    SchemeWedgeInput,
    SchemeWedgeResult,
    adjacency_algebra,
    find_scheme_isomorphism,
    quotient_scheme,
    scheme_wedge,
    scheme_wedge_via_quotient,
    subscheme,
    validate_scheme,
    verify_scheme_wedge_algebra,
)
from .oracles import (
    FiniteGroupTable,
    brute_force_associativity,
    cayley_scheme,
    cyclic_group,
    direct_product,
    group_algebra,
    schur_ring,
    symmetric_group_3,
)
from .reports import AlgebraError, RefusalError, SearchBoundExceeded, ValidationReport

__all__ = [name for name in dir() if not name.startswith("_")]
