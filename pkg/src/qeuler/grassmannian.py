"""Classical and quantum cohomology of Grassmannians G(k, n).

The ring is presented as the Jacobian ring of the Landau-Ginzburg potential
``W_q = p_{n+1}/(n+1) + (-1)^k q x_1`` written in the elementary symmetric
functions ``x_i`` of k Chern roots.  The point-class functional comes from
the Schur basis: ``f`` reads off the coefficient of ``s_rect`` times the sign
``(-1)^{k(n-k)}`` (the ``x_i`` are Chern classes of the tautological
subbundle, whose dual carries the positive Schubert classes).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

from . import linalg
from .algebra import AlgebraElement, QuotientAlgebra, build_quotient_algebra, is_unit
from .frobenius import FrobeniusData, frobenius_structure
from .poly import MPoly
from .qfield import LAMBDA, QQ, RatFnQ

DEFAULT_DIM_CAP = 35
DEFAULT_EULER_CAP = 12
NORMALIZATION_CHECK_CAP = 8


class GrassmannianError(ValueError):
    pass


class NormalizationError(AssertionError):
    """The geometric functional failed its Euler-polynomial cross-check."""


@dataclass(frozen=True)
class GrassmannianSpec:
    k: int
    n: int
    quantum: bool = True

    def __post_init__(self):
        if not (1 <= self.k < self.n):
            raise GrassmannianError(f"need 1 <= k < n, got k={self.k}, n={self.n}")

    @property
    def expected_dim(self) -> int:
        return comb(self.n, self.k)

    @property
    def x_vars(self) -> tuple[str, ...]:
        return tuple(f"x{i}" for i in range(1, self.k + 1))

    @property
    def variables(self) -> tuple[str, ...]:
        return self.x_vars + (("q",) if self.quantum else ())

    @property
    def weights(self) -> tuple[int, ...]:
        w = tuple(2 * i for i in range(1, self.k + 1))
        return w + ((2 * self.n,) if self.quantum else ())

    @property
    def point_sign(self) -> int:
        return -1 if (self.k * (self.n - self.k)) % 2 else 1

    @property
    def reference_sign(self) -> int:
        return -1 if comb(self.n, 2) % 2 else 1

    def classical(self) -> "GrassmannianSpec":
        return GrassmannianSpec(self.k, self.n, False)


# -- symmetric functions -----------------------------------------------------

def _e(i: int, variables, k: int) -> MPoly:
    """Elementary class e_i as a polynomial in x_1..x_k (e_0 = 1, zero out of range)."""
    if i == 0:
        return MPoly.constant(1, variables)
    if i < 0 or i > k:
        return MPoly(variables)
    return MPoly.var(f"x{i}", variables)


def power_sum_in_elementary(m: int, k: int, variables=None) -> MPoly:
    """p_m of k roots written in their elementary symmetric functions (Newton)."""
    if m < 1:
        raise ValueError("m must be positive")
    variables = tuple(variables) if variables is not None else tuple(f"x{i}" for i in range(1, k + 1))
    p = [MPoly(variables)]
    for r in range(1, m + 1):
        acc = _e(r, variables, k) * ((-1) ** (r - 1) * r)
        for i in range(1, r):
            ei = _e(i, variables, k)
            if ei:
                acc = acc + ei * p[r - i] * ((-1) ** (i - 1))
        p.append(acc)
    return p[m]


def landau_ginzburg(spec: GrassmannianSpec) -> MPoly:
    V = spec.variables
    W = power_sum_in_elementary(spec.n + 1, spec.k, V) * Fraction(1, spec.n + 1)
    if spec.quantum:
        W = W + MPoly.var("q", V) * MPoly.var("x1", V) * (-1) ** spec.k
    return W.with_weights(spec.weights)


def potential_ideal(spec: GrassmannianSpec) -> list[MPoly]:
    W = landau_ginzburg(spec)
    return [W.diff(x) for x in spec.x_vars]


def partitions_in_box(rows: int, cols: int) -> list[tuple[int, ...]]:
    """Partitions with at most ``rows`` parts, each at most ``cols``; zeros stripped."""
    out = []
    for parts in combinations_with_replacement(range(cols + 1), rows):
        lam = tuple(sorted(parts, reverse=True))
        out.append(tuple(p for p in lam if p))
    out = sorted(set(out), key=lambda lam: (sum(lam), lam))
    return out


def conjugate(lam) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def _poly_det(M) -> MPoly:
    n = len(M)
    if n == 1:
        return M[0][0]
    acc = None
    for j in range(n):
        if not M[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        t = M[0][j] * _poly_det(minor)
        t = t if j % 2 == 0 else -t
        acc = t if acc is None else acc + t
    return acc if acc is not None else M[0][0] * 0


def schur_polynomial(lam, k: int, variables=None) -> MPoly:
    """s_lam = det(e_{lam'_i - i + j}) in the elementary classes x_1..x_k."""
    variables = tuple(variables) if variables is not None else tuple(f"x{i}" for i in range(1, k + 1))
    lc = conjugate(tuple(lam))
    if not lc:
        return MPoly.constant(1, variables)
    m = len(lc)
    M = [[_e(lc[i] - i + j, variables, k) for j in range(m)] for i in range(m)]
    return _poly_det(M)


# -- the Frobenius extension -------------------------------------------------

@dataclass(frozen=True, eq=False)
class GrassmannianCohomology:
    spec: GrassmannianSpec
    frobenius: FrobeniusData
    partitions: tuple
    schur_matrix: tuple = field(repr=False)  # column lam = coordinates of s_lam

    @property
    def algebra(self) -> QuotientAlgebra:
        return self.frobenius.algebra

    @property
    def omega(self) -> AlgebraElement:
        return self.frobenius.omega

    def schur_class(self, lam) -> AlgebraElement:
        return self.algebra.from_poly(schur_polynomial(lam, self.spec.k, self.spec.x_vars))


@lru_cache(maxsize=None)
def build(spec: GrassmannianSpec, cap: int = DEFAULT_DIM_CAP) -> GrassmannianCohomology:
    if spec.expected_dim > cap:
        raise GrassmannianError(f"C({spec.n},{spec.k}) = {spec.expected_dim} exceeds the cap {cap}")
    ground = LAMBDA if spec.quantum else QQ
    A = build_quotient_algebra(potential_ideal(spec), spec.x_vars, ground)
    if A.dim != spec.expected_dim:
        raise GrassmannianError(f"quotient has dimension {A.dim}, expected {spec.expected_dim}")
    parts = partitions_in_box(spec.k, spec.n - spec.k)
    cols = [A.from_poly(schur_polynomial(lam, spec.k, spec.x_vars)).coords for lam in parts]
    S = linalg.transpose(cols)
    rect = tuple([spec.n - spec.k] * spec.k)
    target = [ground.one if lam == rect else ground.zero for lam in parts]
    # row `rect` of S^-1: solve S^T y = e_rect
    row = linalg.solve(linalg.transpose(S), target, ground)
    functional = [c * spec.point_sign for c in row]
    F = frobenius_structure(A, functional)
    if not spec.quantum and spec.k * (spec.n - spec.k) <= NORMALIZATION_CHECK_CAP:
        if A.from_poly(euler_polynomial(spec.k, spec.n)) != F.omega:
            raise NormalizationError(
                f"characteristic element of H*(G({spec.k},{spec.n})) is not the Euler class")
    return GrassmannianCohomology(spec, F, tuple(parts), tuple(map(tuple, S)))


def build_cohomology(spec: GrassmannianSpec) -> FrobeniusData:
    return build(spec).frobenius


def schur_gram_matrix(G: GrassmannianCohomology):
    """f(s_lam s_mu) over the box partitions."""
    classes = [G.schur_class(lam) for lam in G.partitions]
    F = G.frobenius
    return [[F.apply(a * b) for b in classes] for a in classes]


def box_complement(lam, k: int, width: int) -> tuple[int, ...]:
    padded = list(lam) + [0] * (k - len(lam))
    comp = [width - padded[k - 1 - i] for i in range(k)]
    return tuple(p for p in comp if p)


def poincare_duality_holds(G: GrassmannianCohomology) -> bool:
    spec = G.spec
    gram = schur_gram_matrix(G)
    for i, lam in enumerate(G.partitions):
        comp = box_complement(lam, spec.k, spec.n - spec.k)
        for j, mu in enumerate(G.partitions):
            expected = spec.point_sign if mu == comp else 0
            if gram[i][j] != expected:
                return False
    return True


# -- Hessian and Euler polynomial ------------------------------------------

def hessian_polynomial(spec: GrassmannianSpec) -> MPoly:
    W = landau_ginzburg(spec)
    xs = spec.x_vars
    H = [[W.diff(a).diff(b) for b in xs] for a in xs]
    return _poly_det(H)


def hessian_determinant(spec: GrassmannianSpec) -> AlgebraElement:
    return build(spec).algebra.from_poly(hessian_polynomial(spec))


def elementary_symmetric(i: int, roots, variables) -> MPoly:
    """e_i(roots) as a polynomial over ``variables``."""
    if i == 0:
        return MPoly.constant(1, variables)
    acc = MPoly(variables)
    for subset in combinations(roots, i):
        t = MPoly.constant(1, variables)
        for r in subset:
            t = t * MPoly.var(r, variables)
        acc = acc + t
    return acc


def symmetric_reduce(p: MPoly, roots, e_names) -> MPoly:
    """Rewrite a polynomial symmetric in ``roots`` in their elementary functions.

    Repeatedly removes the lex-leading root monomial ``c * r^a`` by subtracting
    ``c * e_1^(a1-a2) ... e_m^(am)``.  The result lives over the non-root
    variables of ``p`` followed by ``e_names``.
    """
    roots = tuple(roots)
    V = p.variables
    ridx = [V.index(r) for r in roots]
    oidx = [i for i in range(len(V)) if i not in ridx]
    others = tuple(V[i] for i in oidx)
    out_vars = others + tuple(e_names)
    m = len(roots)
    elem = [elementary_symmetric(i, roots, V) for i in range(m + 1)]
    pow_cache: dict = {}

    def epow(i, a):
        if (i, a) not in pow_cache:
            pow_cache[(i, a)] = elem[i] ** a
        return pow_cache[(i, a)]

    work = dict(p.terms)
    result: dict = {}
    while work:
        lead = max(tuple(e[i] for i in ridx) for e in work)
        if any(lead[i] < lead[i + 1] for i in range(m - 1)):
            raise ValueError("polynomial is not symmetric in the given roots")
        coeff_terms = {e: c for e, c in work.items() if tuple(e[i] for i in ridx) == lead}
        shape = [lead[i] - (lead[i + 1] if i + 1 < m else 0) for i in range(m)]
        prod = MPoly.constant(1, V)
        for i, a in enumerate(shape, start=1):
            if a:
                prod = prod * epow(i, a)
        for e, c in coeff_terms.items():
            other_exp = tuple(e[i] for i in oidx)
            sub = prod.mul_term(tuple(e[i] if i in oidx else 0 for i in range(len(V))), c)
            for se, sc in sub.terms.items():
                w = work.get(se, 0) - sc
                if w == 0:
                    work.pop(se, None)
                else:
                    work[se] = w
            key = other_exp + tuple(shape)
            result[key] = result.get(key, 0) + c
    return MPoly(out_vars, result)


def euler_polynomial(k: int, n: int, cap: int = DEFAULT_EULER_CAP) -> MPoly:
    """Top Chern class prod(mu_j - lambda_i) of the tangent bundle as a polynomial in x."""
    if k * (n - k) > cap:
        raise GrassmannianError(f"k(n-k) = {k * (n - k)} exceeds the Euler-polynomial cap {cap}")
    lams = tuple(f"l{i}" for i in range(1, k + 1))
    mus = tuple(f"m{j}" for j in range(1, n - k + 1))
    V = lams + mus
    E = MPoly.constant(1, V)
    for mu in mus:
        for lam in lams:
            E = E * (MPoly.var(mu, V) - MPoly.var(lam, V))
    xs = tuple(f"x{i}" for i in range(1, k + 1))
    ys = tuple(f"y{j}" for j in range(1, n - k + 1))
    in_x = symmetric_reduce(E, lams, xs)          # over mus + xs
    in_xy = symmetric_reduce(in_x, mus, ys)       # over xs + ys
    # c(S) c(Q) = 1 gives y_m = -sum_{i=1}^{min(k,m)} x_i y_{m-i}
    y = [MPoly.constant(1, xs)]
    for m in range(1, n - k + 1):
        acc = MPoly(xs)
        for i in range(1, min(k, m) + 1):
            acc = acc - MPoly.var(f"x{i}", xs) * y[m - i]
        y.append(acc)
    return in_xy.substitute({ys[j - 1]: y[j] for j in range(1, n - k + 1)}, xs)


# -- the Hessian theorem -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class HessianReport:
    spec: GrassmannianSpec
    omega: AlgebraElement
    hessian_nf: AlgebraElement
    epsilon: Fraction | None
    reference_sign: int
    unit_multiplier: AlgebraElement | None
    unit_multiplier_is_unit: bool

    @property
    def violation(self) -> bool:
        return self.epsilon is None and not self.unit_multiplier_is_unit


def _scalar_ratio(h: AlgebraElement, w: AlgebraElement):
    """Rational eps with h = eps * w, or None."""
    for a, b in zip(h.coords, w.coords):
        if b != 0:
            eps = a / b
            if isinstance(eps, RatFnQ):
                if not eps.is_constant():
                    return None
                eps = eps.constant()
            return eps if h == w * eps else None
    return None


def _solve_multiplier(h: AlgebraElement, w: AlgebraElement):
    """Some u with u * w = h, or None if h is not in the ideal (w)."""
    A = w.algebra
    M = A.regular_rep_matrix(w)
    aug = [list(M[i]) + [h.coords[i]] for i in range(A.dim)]
    R, piv = linalg.rref(aug, A.ground)
    if A.dim in piv:
        return None
    u = [A.ground.zero] * A.dim
    for row, p in enumerate(piv):
        u[p] = R[row][A.dim]
    return A.element(u)


def verify_hessian_theorem(spec: GrassmannianSpec) -> HessianReport:
    G = build(spec)
    w = G.omega
    h = hessian_determinant(spec)
    eps = _scalar_ratio(h, w)
    u = w.algebra.scalar(eps) if eps is not None else _solve_multiplier(h, w)
    u_unit = u is not None and is_unit(u).is_unit
    return HessianReport(spec, w, h, eps, spec.reference_sign, u, u_unit)
