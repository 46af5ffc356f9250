"""Specialization q -> r of Frobenius extensions over Lambda."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, QuotientAlgebra, build_structure_constant_algebra
from .frobenius import FrobeniusData, frobenius_structure
from .qfield import QQ, LAMBDA, RatFnQ


class SpecializationError(ValueError):
    pass


class InvariantViolation(AssertionError):
    pass


@dataclass(frozen=True)
class SpecializationMap:
    r: Fraction

    def __post_init__(self):
        r = Fraction(self.r)
        if r == 0:
            raise SpecializationError("q must be sent to a nonzero rational")
        object.__setattr__(self, "r", r)

    def __call__(self, c) -> Fraction:
        c = RatFnQ.coerce(c)
        if not c.is_laurent():
            raise SpecializationError(f"coordinate {c} is not a Laurent polynomial in q")
        return c.evaluate(self.r)


def _as_map(s) -> SpecializationMap:
    return s if isinstance(s, SpecializationMap) else SpecializationMap(s)


def specialize_quotient(A: QuotientAlgebra, s) -> QuotientAlgebra:
    if A.ground != LAMBDA:
        raise SpecializationError("only algebras over Lambda can be specialized")
    s = _as_map(s)
    table = [[tuple(s(c) for c in cell) for cell in row] for row in A.table]
    return build_structure_constant_algebra(
        A.labels, table, QQ, [s(c) for c in A.one_coords], validate=False,
        variables=A.variables, monomials=A.monomials)


def specialize_element(a: AlgebraElement, s, target: QuotientAlgebra | None = None) -> AlgebraElement:
    """Coordinatewise q -> r; ``target`` is the specialized algebra (built if omitted)."""
    s = _as_map(s)
    if target is None:
        target = specialize_quotient(a.algebra, s)
    return target.element([s(c) for c in a.coords])


def specialize_algebra(F: FrobeniusData, s, check: bool = True) -> FrobeniusData:
    """Push ``F`` forward along q -> r with the form r o f.

    With ``check`` the characteristic elements are compared:
    omega of the result must equal the image of omega of ``F``.
    """
    s = _as_map(s)
    B = specialize_quotient(F.algebra, s)
    FB = frobenius_structure(B, [s(v) for v in F.functional])
    if check and specialize_element(F.omega, s, B) != FB.omega:
        raise InvariantViolation("omega of the specialization differs from the image of omega")
    return FB


def omega_compatible(F: FrobeniusData, FB: FrobeniusData, s) -> bool:
    return specialize_element(F.omega, s, FB.algebra) == FB.omega
