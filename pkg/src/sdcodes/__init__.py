"""Binary self-dual codes: construction, classification and certification."""

from .gf2core import (
    BitWord,
    BudgetExceeded,
    GenMatrix,
    ParseError,
    WeightEnum,
    dual,
    min_weight,
    read_matrix,
    rref,
    weight_distribution,
    write_matrix,
)
from .selfdual import (
    NotSelfDual,
    SelfDualCode,
    ShadowDecomp,
    doubly_even_subcode,
    gleason_shadow,
    mass_audit,
    mass_total,
    s_extremal_check,
    validate_self_dual,
)
from .construct import (
    build_up,
    harada_munemasa_extend,
    recursive_extend,
    subtract_11,
    subtract_11_shadow_tracked,
)
from .equiv import are_equivalent, aut_order, canonical_form
from .classify import (
    CodeDB,
    CodeEntry,
    classify_all,
    classify_extremal_step,
    covering_radius,
    covering_radius_bounds,
    search_s_extremal_via_shadow,
)

__version__ = "0.1.0"

__all__ = [
    "BitWord",
    "BudgetExceeded",
    "CodeDB",
    "CodeEntry",
    "GenMatrix",
    "NotSelfDual",
    "ParseError",
    "SelfDualCode",
    "ShadowDecomp",
    "WeightEnum",
    "are_equivalent",
    "aut_order",
    "build_up",
    "canonical_form",
    "classify_all",
    "classify_extremal_step",
    "covering_radius",
    "covering_radius_bounds",
    "doubly_even_subcode",
    "dual",
    "gleason_shadow",
    "harada_munemasa_extend",
    "mass_audit",
    "mass_total",
    "min_weight",
    "read_matrix",
    "recursive_extend",
    "rref",
    "s_extremal_check",
    "search_s_extremal_via_shadow",
    "subtract_11",
    "subtract_11_shadow_tracked",
    "validate_self_dual",
    "weight_distribution",
    "write_matrix",
]
