"""Exact workbench for idempotent-induced invariant algebras.

The package proves the product identities symbolically in the free
invariant algebra, checks them on concrete finite-dimensional instances,
audits the accompanying-bracket table for the 28 dot operations, and
implements the eight-parameter representation/module theory.
"""

from .freealg import FreeElement, QMonomial, mono_mul
from .identities import CATALOG, Bindings, check_concrete, prove_all, residual_symbolic
from .invariant import (
    FiniteAlgebra,
    InvariantAlgebra,
    annihilator,
    check_idempotent,
    invariant_subalgebra,
    left_regular_embedding,
    linear_invariant_algebra,
    matrix_algebra,
)
from .modules import (
    ModuleData,
    RepData,
    StarAlgebra,
    check_module_axioms,
    check_representation,
    classify_irreducibility,
    hom_tools,
    is_submodule,
    quotient_module,
    regular_module,
    restrict_to_W,
)
from .products import (
    ProductSpec,
    apply_product,
    audit_accompanying,
    bracket_match,
    commutator_of,
    product_as_free_element,
)
from .scalars import GF, QQ, FieldError, Poly, PolyRing, RatFunc

__version__ = "0.1.0"

__all__ = [
    "Bindings",
    "CATALOG",
    "FieldError",
    "FiniteAlgebra",
    "FreeElement",
    "GF",
    "InvariantAlgebra",
    "ModuleData",
    "Poly",
    "PolyRing",
    "ProductSpec",
    "QMonomial",
    "QQ",
    "RatFunc",
    "RepData",
    "StarAlgebra",
    "annihilator",
    "apply_product",
    "audit_accompanying",
    "bracket_match",
    "check_concrete",
    "check_idempotent",
    "check_module_axioms",
    "check_representation",
    "classify_irreducibility",
    "commutator_of",
    "hom_tools",
    "invariant_subalgebra",
    "is_submodule",
    "left_regular_embedding",
    "linear_invariant_algebra",
    "matrix_algebra",
    "mono_mul",
    "product_as_free_element",
    "prove_all",
    "quotient_module",
    "regular_module",
    "residual_symbolic",
    "restrict_to_W",
]
