"""Finite-dimensional commutative algebras over Q or Lambda = Q[q, 1/q].

An algebra is stored as a structure-constant table in a fixed basis.  Ideal
presentations are turned into tables by normal forms against a Groebner
basis of the ideal; the basis is then the staircase of standard monomials.
Over Lambda every scalar is a :class:`RatFnQ`, i.e. computations happen in
the fraction field Q(q), and "unit" means unit of Lambda.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .groebner import GroebnerBasis, Staircase, buchberger, normal_form, staircase_basis
from .poly import MPoly, demote, promote
from .qfield import QQ, LAMBDA, Ground, RatFnQ, laurent_unit_test


class StructureError(ValueError):
    """Invalid multiplication table; ``witness`` names the offending basis indices."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class GroundMismatch(ValueError):
    pass


class NotAFieldError(ValueError):
    pass


DEFAULT_VALIDATION_CAP = 64


class QuotientAlgebra:
    """Commutative associative unital algebra with a structure-constant table.

    ``table[i][j]`` is the coordinate tuple of ``b_i * b_j``.  When the basis
    consists of monomials in named variables, ``variables``/``monomials``
    record them so elements can be printed and re-parsed as polynomials.
    """

    def __init__(self, ground: Ground, labels: Sequence[str], table, one: Sequence, *,
                 variables: Sequence[str] | None = None,
                 monomials: Sequence[tuple] | None = None,
                 gb: GroebnerBasis | None = None,
                 staircase: Staircase | None = None):
        self.ground = ground
        self.labels = tuple(labels)
        self.table = tuple(tuple(tuple(ground.convert(c) for c in cell) for cell in row)
                           for row in table)
        self.one_coords = tuple(ground.convert(c) for c in one)
        self.variables = tuple(variables) if variables is not None else None
        self.monomials = tuple(tuple(m) for m in monomials) if monomials is not None else None
        self.gb = gb
        self.staircase = staircase
        if len(self.table) != self.dim or any(len(r) != self.dim for r in self.table):
            raise StructureError("table shape does not match the basis")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def element(self, coords) -> "AlgebraElement":
        coords = tuple(self.ground.convert(c) for c in coords)
        if len(coords) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates, got {len(coords)}")
        return AlgebraElement(self, coords)

    def basis(self, i: int) -> "AlgebraElement":
        z = self.ground.zero
        return AlgebraElement(self, tuple(self.ground.one if k == i else z
                                          for k in range(self.dim)))

    def basis_elements(self) -> list["AlgebraElement"]:
        return [self.basis(i) for i in range(self.dim)]

    @property
    def one(self) -> "AlgebraElement":
        return AlgebraElement(self, self.one_coords)

    @property
    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (self.ground.zero,) * self.dim)

    def scalar(self, c) -> "AlgebraElement":
        return self.one * self.ground.convert(c)

    def from_poly(self, p: MPoly) -> "AlgebraElement":
        """Class of a polynomial in the presentation variables (``q`` allowed over Lambda)."""
        if self.gb is None:
            raise ValueError("algebra has no polynomial presentation")
        gvars = self.gb.variables
        if self.ground == LAMBDA and "q" in p.variables and "q" not in gvars:
            p = promote(p.with_variables(gvars + ("q",)))
        elif p.variables != gvars:
            p = p.with_variables(gvars)
        if self.ground == LAMBDA:
            p = p.map_coeffs(RatFnQ.coerce)
        nf = normal_form(p, self.gb)
        coords = [self.ground.zero] * self.dim
        for e, c in nf.terms.items():
            coords[self.staircase.index(e)] = self.ground.convert(c)
        return AlgebraElement(self, tuple(coords))

    def product_coords(self, a: Sequence, b: Sequence) -> tuple:
        out = [self.ground.zero] * self.dim
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = self.table[i]
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                s = ai * bj
                for k, c in enumerate(row[j]):
                    if c != 0:
                        out[k] = out[k] + s * c
        return tuple(out)

    def multiply(self, a: "AlgebraElement", b: "AlgebraElement") -> "AlgebraElement":
        if a.algebra is not self or b.algebra is not self:
            raise ValueError("elements belong to a different algebra")
        return AlgebraElement(self, self.product_coords(a.coords, b.coords))

    def regular_rep_matrix(self, a: "AlgebraElement"):
        """Matrix of multiplication by ``a``; column j holds the coordinates of a*b_j."""
        cols = [self.product_coords(a.coords, self.basis(j).coords) for j in range(self.dim)]
        return linalg.transpose(cols)

    def trace(self, a: "AlgebraElement"):
        M = self.regular_rep_matrix(a)
        acc = self.ground.zero
        for i in range(self.dim):
            acc = acc + M[i][i]
        return acc

    def trace_form(self):
        traces = [self.trace(self.basis(k)) for k in range(self.dim)]
        T = []
        for i in range(self.dim):
            row = []
            for j in range(self.dim):
                acc = self.ground.zero
                for k, c in enumerate(self.table[i][j]):
                    if c != 0:
                        acc = acc + c * traces[k]
                row.append(acc)
            T.append(row)
        return T

    def __repr__(self):
        return f"QuotientAlgebra(dim={self.dim}, ground={self.ground}, basis={list(self.labels)})"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    algebra: QuotientAlgebra
    coords: tuple

    def _same(self, other):
        if not isinstance(other, AlgebraElement) or other.algebra is not self.algebra:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.algebra.multiply(self, other)
        c = self.algebra.ground.convert(other)
        return AlgebraElement(self.algebra, tuple(a * c for a in self.coords))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = self.algebra.one
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return other.algebra is self.algebra and self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def has_laurent_coords(self) -> bool:
        return all(RatFnQ.coerce(c).is_laurent() for c in self.coords)

    def to_poly(self) -> MPoly:
        """Polynomial representative in the basis monomials (``q`` spelled out over Lambda)."""
        A = self.algebra
        if A.monomials is None:
            raise ValueError("algebra basis is not monomial")
        p = MPoly(A.variables, {m: c for m, c in zip(A.monomials, self.coords)})
        if A.ground == LAMBDA:
            return demote(p, A.variables + ("q",))
        return p

    def __str__(self):
        A = self.algebra
        if A.monomials is not None:
            try:
                return str(self.to_poly())
            except ValueError:
                pass
        parts = []
        for c, lab in zip(self.coords, A.labels):
            if c == 0:
                continue
            cs = A.ground.format(c)
            if lab == "1":
                parts.append(f"({cs})" if A.ground == LAMBDA else cs)
            else:
                parts.append(f"({cs})*{lab}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"AlgebraElement({self})"


# -- builders ----------------------------------------------------------------

def build_quotient_algebra(generators: Sequence[MPoly], variables: Sequence[str],
                           ground: Ground = QQ, qname: str = "q") -> QuotientAlgebra:
    """Algebra ``K'[variables]/(generators)`` with the staircase basis.

    Over Lambda the generators may use ``qname`` as a variable or carry RatFnQ
    coefficients; over Q neither is allowed.
    """
    variables = tuple(variables)
    gens = []
    for g in generators:
        if qname in g.variables and qname not in variables:
            if ground != LAMBDA:
                raise GroundMismatch(f"{qname} appears in a generator over ground Q")
            g = promote(g.with_variables(variables + (qname,)), qname)
        elif g.variables != variables:
            g = g.with_variables(variables)
        if ground == LAMBDA:
            g = g.map_coeffs(RatFnQ.coerce)
        else:
            for c in g.terms.values():
                if isinstance(c, RatFnQ) and not c.is_constant():
                    raise GroundMismatch("q-dependent coefficient over ground Q")
            g = g.map_coeffs(lambda c: c.constant() if isinstance(c, RatFnQ) else c)
        gens.append(g)
    gb = buchberger(gens)
    st = staircase_basis(gb)
    if len(st) == 0:
        raise StructureError("the ideal is the whole ring; quotient is zero")
    n = len(st)
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            e = tuple(a + b for a, b in zip(st.monomials[i], st.monomials[j]))
            nf = normal_form(MPoly(variables, {e: ground.one}), gb)
            coords = [ground.zero] * n
            for m, c in nf.terms.items():
                coords[st.index(m)] = c
            table[i][j] = table[j][i] = tuple(coords)
    one = [ground.zero] * n
    one[st.index((0,) * len(variables))] = ground.one
    return QuotientAlgebra(ground, st.labels(), table, one, variables=variables,
                           monomials=st.monomials, gb=gb, staircase=st)


def build_structure_constant_algebra(labels: Sequence[str], tables, ground: Ground = QQ,
                                     identity: Sequence | None = None, *, validate: bool = True,
                                     cap: int = DEFAULT_VALIDATION_CAP, **extra) -> QuotientAlgebra:
    """Algebra from explicit structure constants, checked for the ring axioms.

    ``identity`` defaults to the first basis element.
    """
    n = len(labels)
    if identity is None:
        identity = [1 if k == 0 else 0 for k in range(n)]
    A = QuotientAlgebra(ground, labels, tables, identity, **extra)
    if validate:
        if n > cap:
            raise StructureError(f"dimension {n} exceeds the validation cap {cap}")
        validate_structure(A)
    return A


def validate_structure(A: QuotientAlgebra) -> None:
    n = A.dim
    T = A.table
    for i in range(n):
        for j in range(i + 1, n):
            if T[i][j] != T[j][i]:
                raise StructureError(f"not commutative at ({i}, {j})", (i, j))
    one = A.one_coords
    for i in range(n):
        if A.product_coords(one, A.basis(i).coords) != A.basis(i).coords:
            raise StructureError(f"identity fails on basis element {i}", (i,))
    for i in range(n):
        for j in range(n):
            bij = T[i][j]
            for k in range(n):
                left = A.product_coords(bij, A.basis(k).coords)
                right = A.product_coords(A.basis(i).coords, T[j][k])
                if left != right:
                    raise StructureError(f"not associative at ({i}, {j}, {k})", (i, j, k))


# -- units, radicals, semisimplicity ----------------------------------------

@dataclass(frozen=True)
class UnitVerdict:
    kind: str  # "unit", "zero_divisor", or "nonunit" (Lambda only: neither)
    det: object
    inverse: AlgebraElement | None = None
    witness: AlgebraElement | None = None

    @property
    def is_unit(self) -> bool:
        return self.kind == "unit"


def is_unit(a: AlgebraElement) -> UnitVerdict:
    A = a.algebra
    M = A.regular_rep_matrix(a)
    d = linalg.det(M, A.ground)
    if d == 0:
        v = linalg.kernel(M, A.ground)[0]
        v = linalg.clear_denominators(v)
        return UnitVerdict("zero_divisor", d, witness=A.element(v))
    if A.ground == LAMBDA and laurent_unit_test(d).kind != "unit":
        return UnitVerdict("nonunit", d)
    inv = linalg.solve(M, list(A.one_coords), A.ground)
    return UnitVerdict("unit", d, inverse=A.element(inv))


def _require_field(A: QuotientAlgebra):
    if not A.ground.is_field:
        raise NotAFieldError("operation needs a field as ground ring; specialize first")


def nilradical(A: QuotientAlgebra) -> list[AlgebraElement]:
    """Basis of the nilradical: the radical of the trace form (characteristic 0)."""
    _require_field(A)
    return [A.element(v) for v in linalg.kernel(A.trace_form(), A.ground)]


def socle(A: QuotientAlgebra) -> list[AlgebraElement]:
    """Basis of the annihilator of the nilradical."""
    _require_field(A)
    nil = nilradical(A)
    if not nil:
        return A.basis_elements()
    rows = []
    for x in nil:
        rows.extend(A.regular_rep_matrix(x))
    return [A.element(v) for v in linalg.kernel(rows, A.ground)]


@dataclass(frozen=True)
class SemisimplicityVerdict:
    semisimple: bool
    test: str
    witness: AlgebraElement | None = None
    detail: str = ""


def is_semisimple_trace_oracle(A: QuotientAlgebra) -> SemisimplicityVerdict:
    """Semisimple iff the trace form of the regular representation is nondegenerate."""
    _require_field(A)
    d = linalg.det(A.trace_form(), A.ground)
    return SemisimplicityVerdict(d != 0, "trace_oracle", detail=f"det(trace form) = {A.ground.format(d)}")


def ideal_span(a: AlgebraElement) -> list[tuple]:
    """Coordinate vectors a*b_i spanning the principal ideal aA."""
    A = a.algebra
    return [A.product_coords(a.coords, A.basis(i).coords) for i in range(A.dim)]


__all__ = [
    "QuotientAlgebra", "AlgebraElement", "StructureError", "GroundMismatch", "NotAFieldError",
    "UnitVerdict", "SemisimplicityVerdict", "build_quotient_algebra",
    "build_structure_constant_algebra", "validate_structure", "is_unit", "nilradical",
    "socle", "is_semisimple_trace_oracle", "ideal_span",
]
