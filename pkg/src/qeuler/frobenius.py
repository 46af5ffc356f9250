"""Frobenius forms, dual bases and the characteristic element.

For a basis ``b_i`` and a linear form ``f`` with invertible Gram matrix
``G_ij = f(b_i b_j)``, the dual basis is ``b_j# = sum_i (G^-1)_ij b_i`` and
the characteristic element is ``omega = sum_i b_i b_i#``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg
from .algebra import (
    AlgebraElement,
    GroundMismatch,
    QuotientAlgebra,
    SemisimplicityVerdict,
    build_structure_constant_algebra,
    is_unit,
)
from .qfield import laurent_unit_test


class DegenerateFormError(ValueError):
    """The form's Gram matrix is not invertible over the ground ring."""


@dataclass(frozen=True, eq=False)
class FrobeniusData:
    algebra: QuotientAlgebra
    functional: tuple
    gram: tuple
    gram_inv: tuple
    dual_basis: tuple
    omega: AlgebraElement

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def apply(self, a: AlgebraElement):
        acc = self.algebra.ground.zero
        for c, v in zip(a.coords, self.functional):
            if c != 0 and v != 0:
                acc = acc + c * v
        return acc

    def gram_det(self):
        return linalg.det([list(r) for r in self.gram], self.algebra.ground)


def frobenius_structure(algebra: QuotientAlgebra, functional: Sequence) -> FrobeniusData:
    ground = algebra.ground
    f = tuple(ground.convert(v) for v in functional)
    if len(f) != algebra.dim:
        raise ValueError(f"functional needs {algebra.dim} values, got {len(f)}")
    n = algebra.dim

    def fval(coords):
        acc = ground.zero
        for c, v in zip(coords, f):
            if c != 0 and v != 0:
                acc = acc + c * v
        return acc

    gram = [[fval(algebra.table[i][j]) for j in range(n)] for i in range(n)]
    d = linalg.det(gram, ground)
    if d == 0:
        raise DegenerateFormError("Gram matrix is singular: the kernel of f contains a nonzero ideal")
    if not ground.is_field and laurent_unit_test(d).kind != "unit":
        raise DegenerateFormError(f"Gram determinant {d} is not a unit of Lambda")
    inv = linalg.inverse(gram, ground)
    duals = []
    for j in range(n):
        duals.append(algebra.element([inv[i][j] for i in range(n)]))
    omega = algebra.zero
    for i in range(n):
        omega = omega + algebra.basis(i) * duals[i]
    return FrobeniusData(algebra, f, tuple(map(tuple, gram)), tuple(map(tuple, inv)),
                         tuple(duals), omega)


def characteristic_element(F: FrobeniusData) -> AlgebraElement:
    return F.omega


def coproduct(F: FrobeniusData, a: AlgebraElement):
    """Coefficient matrix M of alpha(a) = sum_i (a b_i) (x) b_i#, i.e. sum M[p][q] b_p (x) b_q."""
    A = F.algebra
    n = A.dim
    M = [[A.ground.zero] * n for _ in range(n)]
    for i in range(n):
        left = (a * A.basis(i)).coords
        right = F.dual_basis[i].coords
        for p in range(n):
            if left[p] == 0:
                continue
            for q in range(n):
                if right[q] != 0:
                    M[p][q] = M[p][q] + left[p] * right[q]
    return M


def counit_apply(F: FrobeniusData, M) -> AlgebraElement:
    """(f (x) id) applied to a tensor given by its coefficient matrix."""
    A = F.algebra
    out = A.zero
    for p in range(A.dim):
        fp = F.functional[p]
        if fp == 0:
            continue
        for q in range(A.dim):
            if M[p][q] != 0:
                out = out + A.basis(q) * (fp * M[p][q])
    return out


def tensor_multiply(F: FrobeniusData, M) -> AlgebraElement:
    """beta applied to a tensor: sum M[p][q] b_p b_q."""
    A = F.algebra
    out = A.zero
    for p in range(A.dim):
        for q in range(A.dim):
            if M[p][q] != 0:
                out = out + A.element(A.table[p][q]) * M[p][q]
    return out


def is_semisimple_via_omega(F: FrobeniusData) -> SemisimplicityVerdict:
    """Semisimple iff the characteristic element is a unit."""
    v = is_unit(F.omega)
    if v.kind == "unit":
        return SemisimplicityVerdict(True, "omega", detail="omega is a unit")
    if v.kind == "zero_divisor":
        return SemisimplicityVerdict(False, "omega", witness=v.witness,
                                     detail="omega is a zero divisor")
    return SemisimplicityVerdict(False, "omega",
                                 detail=f"det of omega's regular representation {v.det} is not a unit")


def direct_sum(F1: FrobeniusData, F2: FrobeniusData) -> FrobeniusData:
    A1, A2 = F1.algebra, F2.algebra
    if A1.ground != A2.ground:
        raise GroundMismatch("direct sum of algebras over different grounds")
    g = A1.ground
    n1, n2 = A1.dim, A2.dim
    z1, z2 = (g.zero,) * n1, (g.zero,) * n2
    n = n1 + n2
    table = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i < n1 and j < n1:
                table[i][j] = A1.table[i][j] + z2
            elif i >= n1 and j >= n1:
                table[i][j] = z1 + A2.table[i - n1][j - n1]
            else:
                table[i][j] = (g.zero,) * n
    labels = [f"({lab},0)" for lab in A1.labels] + [f"(0,{lab})" for lab in A2.labels]
    A = build_structure_constant_algebra(labels, table, g, A1.one_coords + A2.one_coords,
                                         validate=False)
    return frobenius_structure(A, F1.functional + F2.functional)


def twist(F: FrobeniusData, u: AlgebraElement) -> FrobeniusData:
    """The Frobenius structure with form a -> f(u a)."""
    A = F.algebra
    return frobenius_structure(A, [F.apply(u * A.basis(i)) for i in range(A.dim)])


def change_basis(F: FrobeniusData, P) -> tuple[FrobeniusData, list]:
    """Re-express ``F`` in the basis ``b'_j = sum_i P[i][j] b_i``.

    Returns the new data and the matrix P (new coordinates -> old coordinates).
    """
    A = F.algebra
    g = A.ground
    n = A.dim
    Pinv = linalg.inverse(P, g)
    new = [A.element([P[i][j] for i in range(n)]) for j in range(n)]

    def to_new(x: AlgebraElement):
        return tuple(linalg.matvec(Pinv, list(x.coords)))

    table = [[to_new(new[i] * new[j]) for j in range(n)] for i in range(n)]
    B = build_structure_constant_algebra([f"b'{j}" for j in range(n)], table, g,
                                         to_new(A.one), validate=False)
    return frobenius_structure(B, [F.apply(x) for x in new]), P


__all__ = [
    "FrobeniusData", "DegenerateFormError", "frobenius_structure", "characteristic_element",
    "coproduct", "counit_apply", "tensor_multiply", "is_semisimple_via_omega", "direct_sum",
    "twist", "change_basis",
]
