"""Exact degreewise computations for graded presentations of gauge-group cohomology."""

__version__ = "0.1.0"

from .catalog import PoincareProduct, get_entry, series_coefficients
from .estimator import GradedQuotient
from .exactlin import IntMatrix, Lattice, hnf, minimal_multiplier, saturate, snf
from .idealcalc import (
    DegreeReport,
    GeneratorFamily,
    MembershipResult,
    PresentationSpec,
    ideal_lattice,
    membership,
    poincare_scan,
    quotient_report,
)
from .polyring import Polynomial, RingSpec, monomial_basis, parse_poly
from .symfam import girard_s, h_poly, newton_s, powersum_oracle

__all__ = [
    "DegreeReport",
    "GeneratorFamily",
    "GradedQuotient",
    "IntMatrix",
    "Lattice",
    "MembershipResult",
    "PoincareProduct",
    "Polynomial",
    "PresentationSpec",
    "RingSpec",
    "get_entry",
    "girard_s",
    "h_poly",
    "hnf",
    "ideal_lattice",
    "membership",
    "minimal_multiplier",
    "monomial_basis",
    "newton_s",
    "parse_poly",
    "poincare_scan",
    "powersum_oracle",
    "quotient_report",
    "saturate",
    "series_coefficients",
    "snf",
]
