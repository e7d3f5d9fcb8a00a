"""Exact invariants of central hyperplane arrangements.

Combinatorics (intersection lattice, characteristic polynomial, b2
bookkeeping), exact algebra of logarithmic derivation modules (graded
pieces, Saito certificates, minimal free resolutions, projective
dimension), and a certificate-producing inference engine for the
addition-deletion-restriction-division calculus of projective dimensions.
"""

from .arrangement import (
    Arrangement,
    Multiarrangement,
    Flat,
    Restriction,
    normalize,
    localization,
    restriction,
    ziegler_restriction,
    essentialize,
    essentialize_multi,
    parse_arrangement,
    dump_arrangement,
    as_multi,
    flat_of,
)
from .exact import Poly, monomials, poly_det
from .lattice import (
    IntersectionLattice,
    CharPoly,
    build_lattice,
    char_poly,
    reduced_char_poly,
    betti,
    betti0,
    poincare_poly,
    deletion_restriction_check,
    complete_intersection_flats_on,
)

__all__ = [
    "Arrangement",
    "Multiarrangement",
    "Flat",
    "Restriction",
    "normalize",
    "localization",
    "restriction",
    "ziegler_restriction",
    "essentialize",
    "essentialize_multi",
    "parse_arrangement",
    "dump_arrangement",
    "as_multi",
    "flat_of",
    "Poly",
    "monomials",
    "poly_det",
    "IntersectionLattice",
    "CharPoly",
    "build_lattice",
    "char_poly",
    "reduced_char_poly",
    "betti",
    "betti0",
    "poincare_poly",
    "deletion_restriction_check",
    "complete_intersection_flats_on",
]

__version__ = "0.1.0"
