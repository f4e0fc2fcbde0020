"""Exact trace polynomials on Iwahori-Hecke algebras of finite Weyl groups.

The central object is the polynomial trace of the map h -> T_w h T_{w'^-1}
on the standard basis of the Hecke algebra.  At q=1 it counts the solutions
of w y = y w', and on the diagonal w = w' it is a q-analogue of the
centralizer order.  The package enumerates Weyl groups exactly, computes the
trace with a compiled kernel (pure-Python fallback included), classifies
conjugacy classes by the sign structure of their diagonal trace, and ships
frozen reference data plus independent cross-checks for everything it
reports.
"""

from .classes import ClassRecord, ClassSet, char_poly, regular_orders
from .errors import (
    ConfigurationError,
    IntegrityError,
    NotCyclotomicProduct,
    QheckeError,
    ResourceLimitError,
)
from .hecke import commuting_count, mul, mul_basis, nww, nww_alt, phi, power
from .kernel import HAVE_COMPILED
from .positivity import (
    Classification,
    classify,
    compare_positive_nonregular,
    square_ladder_verdict,
)
from .qpoly import QPoly, cyclotomic, factor_cyclotomic, render, render_factored
from .rootsys import CoxeterType, ElementTable, RootDatum, degrees, group_order

__version__ = "0.1.0"

__all__ = [
    "ClassRecord",
    "ClassSet",
    "Classification",
    "ConfigurationError",
    "CoxeterType",
    "ElementTable",
    "HAVE_COMPILED",
    "IntegrityError",
    "NotCyclotomicProduct",
    "QPoly",
    "QheckeError",
    "ResourceLimitError",
    "RootDatum",
    "char_poly",
    "classify",
    "commuting_count",
    "compare_positive_nonregular",
    "cyclotomic",
    "degrees",
    "factor_cyclotomic",
    "group_order",
    "mul",
    "mul_basis",
    "nww",
    "nww_alt",
    "phi",
    "power",
    "regular_orders",
    "render",
    "render_factored",
    "square_ladder_verdict",
]
