"""Finite monoids with associative ideals, their categories, and localized axioms."""

from chainalg.checks import ParseError, Report, StructureError, Verdict, Violation
from chainalg.monoid import (
    FiniteMonoid,
    MonoidHom,
    check_hom,
    enumerate_monoids,
    find_isomorphism,
    make_monoid,
    product,
    verify_monoid,
)

__version__ = "0.1.0"

__all__ = [
    "FiniteMonoid",
    "MonoidHom",
    "ParseError",
    "Report",
    "StructureError",
    "Verdict",
    "Violation",
    "check_hom",
    "enumerate_monoids",
    "find_isomorphism",
    "make_monoid",
    "product",
    "verify_monoid",
]
