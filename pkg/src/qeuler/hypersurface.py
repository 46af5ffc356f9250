"""Quantum cohomology of even-dimensional complete intersections.

Basis ``1, G, ..., G^n, e_1, ..., e_R`` (``G`` the hyperplane class, ``e_a``
primitive middle classes) with relations

    G^{n+1} = D G^{d-1} q,   G e_a = 0,   e_a e_b = P_ab / d (G^n - D G^{d-2} q)

where ``D = prod d_i^{d_i}``, ``d = sum(d_i - 1) + 1`` and ``P`` is the pairing
matrix.  The form is the coordinate of ``G^n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import prod

from . import linalg
from .algebra import (
    AlgebraElement,
    SemisimplicityVerdict,
    build_structure_constant_algebra,
    is_semisimple_trace_oracle,
    is_unit,
)
from .frobenius import FrobeniusData, frobenius_structure, is_semisimple_via_omega
from .poly import MPoly
from .qfield import LAMBDA, RatFnQ, laurent_unit_test
from .specialization import SpecializationMap, specialize_algebra, specialize_element


class HypersurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class HypersurfaceSpec:
    n: int
    degrees: tuple[int, ...]
    R: int
    pairing: tuple = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "degrees", tuple(int(d) for d in self.degrees))
        if self.n < 2 or self.n % 2:
            raise HypersurfaceError("middle dimension n must be even and at least 2")
        if not self.degrees or any(d < 2 for d in self.degrees):
            raise HypersurfaceError("every degree must be at least 2")
        if self.R < 0:
            raise HypersurfaceError("primitive rank must be non-negative")
        if self.n < sum(d - 1 for d in self.degrees) - 1:
            raise HypersurfaceError("need n >= sum(d_i - 1) - 1")
        if self.d > self.n + 1:
            # q would have degree 0 and G^{n+1} -> D G^{n+1} q never terminates
            raise HypersurfaceError("need sum(d_i - 1) <= n so that q has positive degree")
        P = self.pairing
        if P is None:
            P = tuple(tuple(Fraction(int(i == j)) for j in range(self.R)) for i in range(self.R))
        else:
            P = tuple(tuple(Fraction(x) for x in row) for row in P)
        if len(P) != self.R or any(len(row) != self.R for row in P):
            raise HypersurfaceError("pairing must be an R x R matrix")
        if any(P[i][j] != P[j][i] for i in range(self.R) for j in range(self.R)):
            raise HypersurfaceError("pairing must be symmetric")
        if self.R and linalg.det([list(r) for r in P]) == 0:
            raise HypersurfaceError("pairing must be invertible")
        object.__setattr__(self, "pairing", P)

    @property
    def d(self) -> int:
        return sum(di - 1 for di in self.degrees) + 1

    @property
    def D(self) -> int:
        return prod(di ** di for di in self.degrees)

    @property
    def q_weight(self) -> int:
        return 2 * (self.n + 2 - self.d)

    @property
    def variables(self) -> tuple[str, ...]:
        return ("G",) + tuple(f"e{a}" for a in range(1, self.R + 1))


def relation_polynomials(spec: HypersurfaceSpec) -> list[MPoly]:
    """The defining relations as polynomials in G, e_a and q (each should be homogeneous)."""
    V = spec.variables + ("q",)
    weights = (2,) + (spec.n,) * spec.R + (spec.q_weight,)
    G = MPoly.var("G", V).with_weights(weights)
    q = MPoly.var("q", V).with_weights(weights)
    rels = [G ** (spec.n + 1) - G ** (spec.d - 1) * q * spec.D]
    for a in range(1, spec.R + 1):
        ea = MPoly.var(f"e{a}", V).with_weights(weights)
        rels.append(G * ea)
        for b in range(a, spec.R + 1):
            eb = MPoly.var(f"e{b}", V).with_weights(weights)
            rels.append(ea * eb - (G ** spec.n - G ** (spec.d - 2) * q * spec.D)
                        * (spec.pairing[a - 1][b - 1] / spec.d))
    return rels


def grading_consistent(spec: HypersurfaceSpec) -> bool:
    return all(r.is_weighted_homogeneous() for r in relation_polynomials(spec))


def _gamma_power(spec: HypersurfaceSpec, m: int) -> dict[int, RatFnQ]:
    """G^m as {basis index: coefficient}, rewriting G^{n+1} -> D q G^{d-1}."""
    coeff = RatFnQ(1)
    drop = spec.n + 2 - spec.d
    while m > spec.n:
        m -= drop
        coeff = coeff * RatFnQ.q() * spec.D
    return {m: coeff}


def build_hypersurface_algebra(spec: HypersurfaceSpec) -> FrobeniusData:
    if not grading_consistent(spec):
        raise HypersurfaceError("relations are not homogeneous")
    n, R = spec.n, spec.R
    dim = n + 1 + R
    zero = RatFnQ(0)

    def vec(entries: dict) -> tuple:
        v = [zero] * dim
        for k, c in entries.items():
            v[k] = v[k] + c
        return tuple(v)

    prim = {n: RatFnQ(1)}
    low = spec.d - 2
    prim[low] = prim.get(low, zero) - RatFnQ.q() * spec.D
    table = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            if i <= n and j <= n:
                table[i][j] = vec(_gamma_power(spec, i + j))
            elif i <= n:
                table[i][j] = vec({j: RatFnQ(1)}) if i == 0 else vec({})
            elif j <= n:
                table[i][j] = vec({i: RatFnQ(1)}) if j == 0 else vec({})
            else:
                p = spec.pairing[i - n - 1][j - n - 1] / spec.d
                table[i][j] = vec({k: c * p for k, c in prim.items()})
    labels = ["1", "G"] + [f"G^{i}" for i in range(2, n + 1)] + [f"e{a}" for a in range(1, R + 1)]
    nv = 1 + R
    monomials = [(i,) + (0,) * R for i in range(n + 1)]
    monomials += [(0,) + tuple(int(b == a) for b in range(R)) for a in range(R)]
    A = build_structure_constant_algebra(labels, table, LAMBDA, variables=spec.variables,
                                         monomials=monomials)
    assert len(spec.variables) == nv
    f = [1 if k == n else 0 for k in range(dim)]
    return frobenius_structure(A, f)


def gamma(F: FrobeniusData, power: int = 1) -> AlgebraElement:
    return F.algebra.basis(1) ** power


def primitive(F: FrobeniusData, spec: HypersurfaceSpec, a: int) -> AlgebraElement:
    return F.algebra.basis(spec.n + a)


@dataclass(frozen=True, eq=False)
class OmegaComparison:
    closed_form_value: AlgebraElement
    computed_value: AlgebraElement

    @property
    def agree(self) -> bool:
        return self.closed_form_value == self.computed_value


def omega_closed_form(spec: HypersurfaceSpec, F: FrobeniusData | None = None) -> OmegaComparison:
    if len(spec.degrees) != 1:
        raise HypersurfaceError("the closed form is stated for a single degree")
    F = F or build_hypersurface_algebra(spec)
    d, n, R = spec.d, spec.n, spec.R
    A = F.algebra
    Gn = A.basis(n)
    low = A.basis(d - 2)
    stated = Gn * (n + 1) + (Gn - low * (RatFnQ.q() * d ** d)) * Fraction(R, d)
    return OmegaComparison(stated, F.omega)


@dataclass(frozen=True, eq=False)
class HypersurfaceVerdict:
    spec: HypersurfaceSpec
    r: Fraction
    omega_test: SemisimplicityVerdict
    trace_test: SemisimplicityVerdict
    witness: AlgebraElement | None
    witness_annihilates_omega: bool | None
    witness_survives: bool | None
    omega_det: object
    omega_det_laurent_unit: bool
    rep_pattern: dict

    @property
    def semisimple(self) -> bool:
        return self.omega_test.semisimple and self.trace_test.semisimple

    @property
    def tests_agree(self) -> bool:
        return self.omega_test.semisimple == self.trace_test.semisimple


def omega_matrix_pattern(F: FrobeniusData, spec: HypersurfaceSpec) -> dict:
    """Shape of the regular representation of omega.

    Reports whether it is block diagonal (G-block / primitive block), whether
    the primitive block is a scalar matrix, and whether omega acts on
    G, ..., G^n by one common scalar.
    """
    A = F.algebra
    n = spec.n
    M = A.regular_rep_matrix(F.omega)
    dim = A.dim
    block_diag = all(M[i][j] == 0 for i in range(dim) for j in range(dim)
                     if (i <= n) != (j <= n))
    prim = [[M[i][j] for j in range(n + 1, dim)] for i in range(n + 1, dim)]
    prim_scalar = None
    if spec.R:
        c = prim[0][0]
        if all(prim[i][j] == (c if i == j else 0) for i in range(spec.R) for j in range(spec.R)):
            prim_scalar = c
    w = F.omega
    g_scalar = None
    G = A.basis(1)
    wg = w * G
    ratio = None
    for a, b in zip(wg.coords, G.coords):
        if b != 0:
            ratio = a / b
    if ratio is not None and all(w * A.basis(i) == A.basis(i) * ratio for i in range(1, n + 1)):
        g_scalar = ratio
    return {
        "block_diagonal": block_diag,
        "primitive_block_scalar": prim_scalar,
        "gamma_block_scalar": g_scalar,
        "diagonal": [M[i][i] for i in range(dim)],
    }


def classify_semisimple(spec: HypersurfaceSpec, r) -> HypersurfaceVerdict:
    s = SpecializationMap(r)
    F = build_hypersurface_algebra(spec)
    FB = specialize_algebra(F, s)
    omega_test = is_semisimple_via_omega(FB)
    trace_test = is_semisimple_trace_oracle(FB.algebra)
    witness = annihilates = survives = None
    if spec.d > 2 and spec.R >= 1:
        e1 = primitive(F, spec, 1)
        witness = e1
        annihilates = (F.omega * e1).is_zero()
        survives = not specialize_element(e1, s, FB.algebra).is_zero()
    elif not omega_test.semisimple and omega_test.witness is not None:
        witness = omega_test.witness
    v = is_unit(F.omega)
    return HypersurfaceVerdict(
        spec, s.r, omega_test, trace_test, witness, annihilates, survives, v.det,
        laurent_unit_test(v.det).kind == "unit", omega_matrix_pattern(F, spec))
