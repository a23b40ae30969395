"""Lie poset algebras: certified index, Frobenius classification, topology and spectra."""

from .algebra import LiePosetAlgebra, build_algebra, build_type_a, build_type_bcd
from .canonical import canonical_form, canonical_key, is_isomorphic
from .frobenius import (
    RULES,
    apply_rule,
    characterize,
    check_nonpure_conditions,
    decompose_pure,
    generate_constructions,
    generate_pure_frobenius,
    is_frobenius,
)
from .index import IndexCertificate, IndexConfig, cpn1m_index, formula_index, index, witness_functional
from .poset import (
    Poset,
    PosetError,
    complete_poset,
    cone,
    disjoint_union,
    dual,
    fixtures,
    from_cover_relations,
    glue,
    induced,
    statistics,
)
from .signed import SignedPoset, hexagon_bcd, validate_signed
from .spectrum import ad_spectrum, principal_element, spectrum_report
from .topology import betti, build_glued_morse, order_complex, verify_morse

__version__ = "0.1.0"

__all__ = [
    "IndexCertificate",
    "IndexConfig",
    "LiePosetAlgebra",
    "Poset",
    "PosetError",
    "RULES",
    "SignedPoset",
    "ad_spectrum",
    "apply_rule",
    "betti",
    "build_algebra",
    "build_glued_morse",
    "build_type_a",
    "build_type_bcd",
    "canonical_form",
    "canonical_key",
    "characterize",
    "check_nonpure_conditions",
    "complete_poset",
    "cone",
    "cpn1m_index",
    "decompose_pure",
    "disjoint_union",
    "dual",
    "fixtures",
    "formula_index",
    "from_cover_relations",
    "generate_constructions",
    "generate_pure_frobenius",
    "glue",
    "hexagon_bcd",
    "index",
    "induced",
    "is_frobenius",
    "is_isomorphic",
    "order_complex",
    "principal_element",
    "spectrum_report",
    "statistics",
    "validate_signed",
    "verify_morse",
    "witness_functional",
]
