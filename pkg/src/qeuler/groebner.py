"""Buchberger's algorithm, normal forms and staircase bases (grevlex).

Coefficients may be rationals or elements of Q(q); either way they form a
field, so generators are kept monic.  Internally polynomials are plain
``{exponent: coeff}`` dicts.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .poly import MPoly, VariableMismatch
from .qfield import RatFnQ


class InfiniteDimensionalError(ValueError):
    pass


def grevlex_key(exp: Sequence[int]):
    return (sum(exp), tuple(-e for e in reversed(exp)))


def _lead(p: dict):
    return max(p, key=grevlex_key)


def _inv(c):
    return c.inverse() if isinstance(c, RatFnQ) else 1 / c


def _monic(p: dict) -> dict:
    lt = _lead(p)
    c = p[lt]
    if c == 1:
        return p
    inv = _inv(c)
    return {e: v * inv for e, v in p.items()}


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_scaled(p: dict, g: dict, shift, c) -> None:
    """In place: p -= c * x^shift * g."""
    for e, v in g.items():
        ne = tuple(x + y for x, y in zip(e, shift))
        w = p.get(ne)
        t = c * v
        if w is None:
            p[ne] = -t
        else:
            w = w - t
            if w == 0:
                del p[ne]
            else:
                p[ne] = w


def _reduce(p: dict, basis: list[tuple[tuple, dict]]) -> dict:
    """Full reduction of ``p`` by monic polynomials given as (lead, poly)."""
    p = dict(p)
    rem = {}
    while p:
        lt = _lead(p)
        c = p[lt]
        for glt, g in basis:
            if _divides(glt, lt):
                shift = tuple(x - y for x, y in zip(lt, glt))
                _sub_scaled(p, g, shift, c)
                break
        else:
            rem[lt] = c
            del p[lt]
    return rem


def _spoly(f, flt, g, glt):
    m = _lcm(flt, glt)
    out = {}
    sf = tuple(x - y for x, y in zip(m, flt))
    sg = tuple(x - y for x, y in zip(m, glt))
    for e, v in f.items():
        out[tuple(a + b for a, b in zip(e, sf))] = v
    _sub_scaled(out, g, sg, 1)
    return out


@dataclass(frozen=True)
class GroebnerBasis:
    variables: tuple[str, ...]
    generators: tuple[MPoly, ...]
    order: str = "grevlex"
    reduced: bool = True

    @property
    def leading_exponents(self) -> list[tuple]:
        return [_lead(dict(g.terms)) for g in self.generators]

    def _pairs(self):
        return [(_lead(dict(g.terms)), dict(g.terms)) for g in self.generators]

    def is_unit_ideal(self) -> bool:
        return any(sum(e) == 0 for e in self.leading_exponents)

    def normal_form(self, p: MPoly) -> MPoly:
        return normal_form(p, self)

    def staircase(self) -> "Staircase":
        return staircase_basis(self)


@dataclass(frozen=True)
class Staircase:
    variables: tuple[str, ...]
    monomials: tuple[tuple[int, ...], ...]

    def __len__(self):
        return len(self.monomials)

    def index(self, exp) -> int:
        return self.monomials.index(tuple(exp))

    def labels(self) -> list[str]:
        return [str(MPoly.monomial(e, self.variables)) for e in self.monomials]


def buchberger(generators: Sequence[MPoly], order: str = "grevlex") -> GroebnerBasis:
    """Reduced Groebner basis of the ideal spanned by ``generators``."""
    if order != "grevlex":
        raise ValueError("only the graded reverse lexicographic order is supported")
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    variables = gens[0].variables
    for g in gens:
        if g.variables != variables:
            raise VariableMismatch("generators over different variable sets")

    G: list[tuple[tuple, dict]] = []
    pairs: set[tuple[int, int]] = set()

    def add(h: dict):
        h = _monic(h)
        G.append((_lead(h), h))
        k = len(G) - 1
        for i in range(k):
            pairs.add((i, k))

    for g in gens:
        h = _reduce(dict(g.terms), G)
        if h:
            add(h)
    if any(sum(lt) == 0 for lt, _ in G):
        return _unit_basis(variables)

    while pairs:
        i, j = min(pairs, key=lambda ij: (grevlex_key(_lcm(G[ij[0]][0], G[ij[1]][0])), ij))
        pairs.discard((i, j))
        lti, ltj = G[i][0], G[j][0]
        m = _lcm(lti, ltj)
        if all(a == 0 or b == 0 for a, b in zip(lti, ltj)):
            continue  # coprime leading terms
        if any(k not in (i, j) and _divides(G[k][0], m)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(G))):
            continue  # chain criterion
        h = _reduce(_spoly(G[i][1], lti, G[j][1], ltj), G)
        if h:
            if all(e == 0 for e in _lead(h)):
                return _unit_basis(variables)
            add(h)

    # minimalize, then interreduce
    minimal = []
    for idx, (lt, g) in enumerate(G):
        if any(_divides(olt, lt) and (olt != lt or o < idx)
               for o, (olt, _) in enumerate(G) if o != idx):
            continue
        minimal.append((lt, g))
    reduced = []
    for idx, (lt, g) in enumerate(minimal):
        others = [m for k, m in enumerate(minimal) if k != idx]
        tail = {e: c for e, c in g.items() if e != lt}
        r = _reduce(tail, others)
        r[lt] = g[lt]
        reduced.append((lt, r))
    reduced.sort(key=lambda t: grevlex_key(t[0]))
    return GroebnerBasis(variables, tuple(MPoly(variables, g) for _, g in reduced))


def _unit_basis(variables) -> GroebnerBasis:
    return GroebnerBasis(variables, (MPoly.constant(1, variables),))


def normal_form(p: MPoly, gb: GroebnerBasis) -> MPoly:
    if p.variables != gb.variables:
        raise VariableMismatch(f"variables {p.variables} vs {gb.variables}")
    return MPoly(p.variables, _reduce(dict(p.terms), gb._pairs()))


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero."""
    pairs = gb._pairs()
    for i in range(len(pairs)):
        for j in range(i + 1, len(pairs)):
            s = _spoly(pairs[i][1], pairs[i][0], pairs[j][1], pairs[j][0])
            if _reduce(s, pairs):
                return False
    return True


def staircase_basis(gb: GroebnerBasis) -> Staircase:
    """Standard monomials in ascending grevlex order."""
    lts = gb.leading_exponents
    nv = len(gb.variables)
    if any(sum(e) == 0 for e in lts):
        return Staircase(gb.variables, ())
    bounds = []
    for i in range(nv):
        pure = [e[i] for e in lts if all(e[j] == 0 for j in range(nv) if j != i) and e[i] > 0]
        if not pure:
            raise InfiniteDimensionalError(
                f"quotient is infinite-dimensional: no pure power of {gb.variables[i]} "
                "is a leading term")
        bounds.append(min(pure))
    mons = [e for e in product(*(range(b) for b in bounds))
            if not any(_divides(lt, e) for lt in lts)]
    mons.sort(key=grevlex_key)
    return Staircase(gb.variables, tuple(mons))


__all__ = [
    "GroebnerBasis", "Staircase", "InfiniteDimensionalError", "buchberger",
    "normal_form", "staircase_basis", "is_groebner", "grevlex_key",
]
