"""Dense exact linear algebra over Q or Q(q).

Matrices are lists of rows.  Entries are ``Fraction`` or ``RatFnQ``; all
routines only need ring operations, exact division and ``== 0``.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .qfield import QQ, Ground, RatFnQ, u_divmod, u_gcd, u_mul


class SingularMatrixError(ArithmeticError):
    pass


def _size(x) -> int:
    # cheap pivot-quality heuristic: prefer short rational functions
    num = getattr(x, "num", None)
    if num is None:
        return 0
    return len(num) + len(x.den)


def identity(n: int, ground: Ground = QQ):
    return [[ground.one if i == j else ground.zero for j in range(n)] for i in range(n)]


def zeros(rows: int, cols: int, ground: Ground = QQ):
    return [[ground.zero] * cols for _ in range(rows)]


def transpose(M):
    return [list(r) for r in zip(*M)] if M else []


def matmul(A, B):
    Bt = transpose(B)
    return [[_dot(row, col) for col in Bt] for row in A]


def matvec(A, v):
    return [_dot(row, v) for row in A]


def _dot(u, v):
    acc = None
    for a, b in zip(u, v):
        if a != 0 and b != 0:
            t = a * b
            acc = t if acc is None else acc + t
    if acc is None:
        return u[0] * 0 if u else 0
    return acc


def rref(M, ground: Ground = QQ):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    R = [list(r) for r in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        cands = [i for i in range(r, rows) if R[i][c] != 0]
        if not cands:
            continue
        p = min(cands, key=lambda i: _size(R[i][c]))
        R[r], R[p] = R[p], R[r]
        inv = R[r][c].inverse() if isinstance(R[r][c], RatFnQ) else 1 / R[r][c]
        R[r] = [x * inv if x != 0 else x for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                Ri, Rr = R[i], R[r]
                R[i] = [Ri[j] - f * Rr[j] if Rr[j] != 0 else Ri[j] for j in range(cols)]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M, ground: Ground = QQ) -> int:
    if not M:
        return 0
    return len(rref(M, ground)[1])


def kernel(M, ground: Ground = QQ):
    """Basis of the right null space, one vector per free column in column order."""
    cols = len(M[0]) if M else 0
    R, pivots = rref(M, ground)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [ground.zero] * cols
        v[f] = ground.one
        for row, p in enumerate(pivots):
            if R[row][f] != 0:
                v[p] = -R[row][f]
        basis.append(v)
    return basis


def det(M, ground: Ground = QQ):
    n = len(M)
    if n == 0:
        return ground.one
    A = [list(r) for r in M]
    d = ground.one
    for c in range(n):
        cands = [i for i in range(c, n) if A[i][c] != 0]
        if not cands:
            return ground.zero
        p = min(cands, key=lambda i: _size(A[i][c]))
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        piv = A[c][c]
        d = d * piv
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / piv
                Ai, Ac = A[i], A[c]
                A[i] = [Ai[j] - f * Ac[j] if Ac[j] != 0 else Ai[j] for j in range(n)]
    return d


def solve(M, b, ground: Ground = QQ):
    """Solve ``M x = b`` for square invertible ``M``."""
    n = len(M)
    aug = [list(M[i]) + [b[i]] for i in range(n)]
    R, pivots = rref(aug, ground)
    if pivots[:n] != list(range(n)) or len(pivots) > n:
        raise SingularMatrixError("matrix is singular")
    return [R[i][n] for i in range(n)]


def inverse(M, ground: Ground = QQ):
    n = len(M)
    I = identity(n, ground)
    aug = [list(M[i]) + I[i] for i in range(n)]
    R, pivots = rref(aug, ground)
    if pivots[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [R[i][n:] for i in range(n)]


def span_equal(U, V, ground: Ground = QQ) -> bool:
    """Whether two lists of vectors span the same subspace."""
    ru = rank(U, ground) if U else 0
    rv = rank(V, ground) if V else 0
    if ru != rv:
        return False
    both = list(U) + list(V)
    return (rank(both, ground) if both else 0) == ru


def clear_denominators(v):
    """Scale a Q(q) vector by the lcm of its denominators (and rational content)."""
    if not any(isinstance(x, RatFnQ) for x in v):
        dens = [Fraction(x).denominator for x in v if x != 0]
        m = lcm(*dens) if dens else 1
        return [Fraction(x) * m for x in v]
    L = (Fraction(1),)
    for x in v:
        x = RatFnQ.coerce(x)
        if x != 0:
            g = u_gcd(L, x.den)
            L = u_divmod(u_mul(L, x.den), g)[0]
    Lq = RatFnQ(L)
    out = [RatFnQ.coerce(x) * Lq for x in v]
    cden = [c.denominator for x in out for c in x.num]
    m = lcm(*cden) if cden else 1
    return [x * m for x in out]
