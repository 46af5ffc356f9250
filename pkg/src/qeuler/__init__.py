"""Exact computation of Frobenius algebras and their characteristic elements.

Covers (quantum) cohomology of Grassmannians and of even-dimensional
complete intersections, Groebner-basis presentations, specialization of
q, and two independent semisimplicity tests.
"""

from .algebra import (
    AlgebraElement,
    QuotientAlgebra,
    build_quotient_algebra,
    build_structure_constant_algebra,
    is_semisimple_trace_oracle,
    is_unit,
    nilradical,
    socle,
)
from .frobenius import (
    FrobeniusData,
    change_basis,
    characteristic_element,
    coproduct,
    direct_sum,
    frobenius_structure,
    is_semisimple_via_omega,
    twist,
)
from .groebner import buchberger, normal_form, staircase_basis
from .parser import parse_poly
from .poly import MPoly
from .qfield import LAMBDA, QQ, RatFnQ, laurent_unit_test, ratfn_normalize
from .specialization import SpecializationMap, specialize_algebra, specialize_element

__version__ = "0.1.0"

__all__ = [
    "AlgebraElement", "QuotientAlgebra", "build_quotient_algebra",
    "build_structure_constant_algebra", "is_semisimple_trace_oracle", "is_unit", "nilradical",
    "socle", "FrobeniusData", "change_basis", "characteristic_element", "coproduct",
    "direct_sum", "frobenius_structure", "is_semisimple_via_omega", "twist", "buchberger",
    "normal_form", "staircase_basis", "parse_poly", "MPoly", "LAMBDA", "QQ", "RatFnQ",
    "laurent_unit_test", "ratfn_normalize", "SpecializationMap", "specialize_algebra",
    "specialize_element",
]
