"""Sparse multivariate polynomials with exact coefficients.

Coefficients are ``Fraction`` by default; polynomials used in Groebner
computations over Q(q) carry :class:`~qeuler.qfield.RatFnQ` coefficients
instead.  ``q`` can live either as an ordinary variable or inside the
coefficients; :func:`promote` and :func:`demote` move it between the two.
"""

from __future__ import annotations

from fractions import Fraction
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .qfield import RatFnQ, _fmt_rat


class VariableMismatch(ValueError):
    pass


def _coerce_coeff(c):
    if isinstance(c, (Fraction, RatFnQ)):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


class MPoly:
    """Immutable polynomial over an ordered tuple of named variables.

    ``weights`` optionally assigns each variable a positive even degree; it
    only affects :meth:`weighted_degree`.  Arithmetic keeps the weights of
    whichever operand has them and drops them when the two conflict.
    """

    __slots__ = ("variables", "_terms", "weights", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None,
                 weights: Sequence[int] | None = None):
        self.variables = tuple(variables)
        nv = len(self.variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != nv or any(e < 0 for e in exp):
                raise ValueError(f"bad exponent {exp} for variables {self.variables}")
            c = _coerce_coeff(c)
            if c != 0:
                clean[exp] = c
        self._terms = clean
        if weights is not None:
            weights = tuple(int(w) for w in weights)
            if len(weights) != nv or any(w <= 0 or w % 2 for w in weights):
                raise ValueError("weights must be positive even integers, one per variable")
        self.weights = weights
        self._hash = None

    @classmethod
    def _raw(cls, variables, terms, weights=None) -> "MPoly":
        p = cls.__new__(cls)
        p.variables = variables
        p._terms = terms
        p.weights = weights
        p._hash = None
        return p

    @classmethod
    def constant(cls, c, variables: Sequence[str]) -> "MPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, variables: Sequence[str]) -> "MPoly":
        variables = tuple(variables)
        if name not in variables:
            raise KeyError(f"unknown variable {name!r}")
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: 1})

    @classmethod
    def monomial(cls, exp: Sequence[int], variables: Sequence[str], coeff=1) -> "MPoly":
        return cls(variables, {tuple(exp): coeff})

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self._terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((e[i] for e in self._terms), default=-1)

    def constant_term(self):
        return self._terms.get((0,) * len(self.variables), Fraction(0))

    def with_weights(self, weights: Sequence[int] | None) -> "MPoly":
        return MPoly(self.variables, self._terms, weights)

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "MPoly"):
        if self.variables != other.variables:
            raise VariableMismatch(f"variables {self.variables} vs {other.variables}")

    def _lift(self, other):
        if isinstance(other, MPoly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, RatFnQ)):
            return MPoly._raw(self.variables, {(0,) * len(self.variables): _coerce_coeff(other)}
                              if other != 0 else {}, self.weights)
        return None

    def _weights_with(self, other: "MPoly"):
        if self.weights is None:
            return other.weights
        if other.weights is None or other.weights == self.weights:
            return self.weights
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in other._terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v = v + c
                if v == 0:
                    del out[e]
                else:
                    out[e] = v
        return MPoly._raw(self.variables, out, self._weights_with(other))

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.variables, {e: -c for e, c in self._terms.items()}, self.weights)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, RatFnQ)):
            if other == 0:
                return MPoly._raw(self.variables, {}, self.weights)
            return MPoly._raw(self.variables, {e: c * other for e, c in self._terms.items()},
                              self.weights)
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out: dict = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        out = {e: c for e, c in out.items() if c != 0}
        return MPoly._raw(self.variables, out, self._weights_with(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction, RatFnQ)):
            if other == 0:
                raise ZeroDivisionError("polynomial division by zero scalar")
            inv = other.inverse() if isinstance(other, RatFnQ) else 1 / Fraction(other)
            return self * inv
        return NotImplemented

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative exponent")
        out = MPoly.constant(1, self.variables).with_weights(self.weights)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def mul_term(self, exp: tuple, coeff) -> "MPoly":
        """Multiply by the single term ``coeff * x^exp``."""
        return MPoly._raw(self.variables,
                          {tuple(a + b for a, b in zip(e, exp)): c * coeff
                           for e, c in self._terms.items()}, self.weights)

    def map_coeffs(self, fn) -> "MPoly":
        return MPoly(self.variables, {e: fn(c) for e, c in self._terms.items()}, self.weights)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            return self.variables == other.variables and self._terms == other._terms
        if isinstance(other, (int, Fraction, RatFnQ)):
            if other == 0:
                return not self._terms
            return self._terms == {(0,) * len(self.variables): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.variables, frozenset(self._terms.items())))
        return self._hash

    # -- calculus and grading ------------------------------------------------

    def diff(self, name: str) -> "MPoly":
        if name not in self.variables:
            raise KeyError(f"unknown variable {name!r}")
        i = self.variables.index(name)
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                ne = e[:i] + (e[i] - 1,) + e[i + 1:]
                out[ne] = c * e[i]
        return MPoly._raw(self.variables, out, self.weights)

    def weighted_degree(self, exp: Sequence[int] | None = None) -> int:
        """Weighted degree of ``exp``, or the maximum over the terms if omitted."""
        if self.weights is None:
            raise ValueError("polynomial carries no weights")
        if exp is not None:
            return sum(w * e for w, e in zip(self.weights, exp))
        return max((self.weighted_degree(e) for e in self._terms), default=-1)

    def is_weighted_homogeneous(self) -> bool:
        degs = {self.weighted_degree(e) for e in self._terms}
        return len(degs) <= 1

    # -- substitution and variable management --------------------------------

    def substitute(self, mapping: Mapping[str, "MPoly"], variables: Sequence[str]) -> "MPoly":
        """Replace each variable by a polynomial in ``variables``.

        Variables absent from ``mapping`` must themselves occur in ``variables``.
        """
        variables = tuple(variables)
        images = []
        for v in self.variables:
            if v in mapping:
                img = mapping[v]
                if img.variables != variables:
                    raise VariableMismatch(f"image of {v} has variables {img.variables}")
            else:
                img = MPoly.var(v, variables)
            images.append(img)
        cache: dict = {}

        def power(i, k):
            key = (i, k)
            if key not in cache:
                cache[key] = images[i] ** k
            return cache[key]

        out = MPoly(variables)
        for e, c in self._terms.items():
            t = MPoly.constant(c, variables)
            for i, k in enumerate(e):
                if k:
                    t = t * power(i, k)
            out = out + t
        return out

    def with_variables(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over a different variable list (must contain every used variable)."""
        variables = tuple(variables)
        pos = []
        for v in self.variables:
            pos.append(variables.index(v) if v in variables else None)
        out = {}
        for e, c in self._terms.items():
            ne = [0] * len(variables)
            for i, k in enumerate(e):
                if k:
                    if pos[i] is None:
                        raise VariableMismatch(f"variable {self.variables[i]} not in {variables}")
                    ne[pos[i]] = k
            out[tuple(ne)] = c
        return MPoly(variables, out)

    def evaluate(self, values: Mapping[str, object]):
        """Evaluate at exact scalar values for every variable."""
        total = Fraction(0)
        vals = [values[v] for v in self.variables]
        for e, c in self._terms.items():
            t = c
            for x, k in zip(vals, e):
                if k:
                    t = t * x ** k
            total = total + t
        return total

    # -- printing ------------------------------------------------------------

    def sorted_terms(self):
        """Terms in descending lexicographic exponent order."""
        return sorted(self._terms.items(), key=lambda t: t[0], reverse=True)

    def __str__(self):
        if not self._terms:
            return "0"
        pieces = []
        for e, c in self.sorted_terms():
            mono = "*".join(v if k == 1 else f"{v}^{k}"
                            for v, k in zip(self.variables, e) if k)
            if isinstance(c, RatFnQ):
                if c.is_constant():
                    c = c.constant()
                else:
                    body = f"({c})" + (f"*{mono}" if mono else "")
                    pieces.append(("+", body))
                    continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if not mono:
                body = _fmt_rat(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{_fmt_rat(mag)}*{mono}"
            pieces.append((sign, body))
        sign, body = pieces[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"MPoly({self}; {','.join(self.variables)})"


def poly_arith(a: MPoly, b: MPoly, op: str) -> MPoly:
    if a.variables != b.variables:
        raise VariableMismatch(f"variables {a.variables} vs {b.variables}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def poly_diff(p: MPoly, var: str) -> MPoly:
    return p.diff(var)


def promote(p: MPoly, qname: str = "q") -> MPoly:
    """Move variable ``qname`` into RatFnQ coefficients."""
    if qname not in p.variables:
        return p.map_coeffs(RatFnQ.coerce)
    i = p.variables.index(qname)
    rest = p.variables[:i] + p.variables[i + 1:]
    out: dict = {}
    for e, c in p.terms.items():
        ne = e[:i] + e[i + 1:]
        term = RatFnQ.coerce(c) * RatFnQ.q(e[i])
        out[ne] = out[ne] + term if ne in out else term
    return MPoly(rest, out)


def demote(p: MPoly, variables: Sequence[str] | None = None, qname: str = "q") -> MPoly:
    """Inverse of :func:`promote`: spell RatFnQ coefficients out in a variable ``qname``.

    Raises ``ValueError`` if a coefficient is not a polynomial in ``q``.
    """
    if variables is None:
        variables = p.variables + (qname,)
    variables = tuple(variables)
    qi = variables.index(qname)
    others = [variables.index(v) for v in p.variables]
    out: dict = {}
    for e, c in p.terms.items():
        c = RatFnQ.coerce(c)
        if c.den != (Fraction(1),):
            raise ValueError(f"coefficient {c} is not a polynomial in {qname}")
        for k, a in enumerate(c.num):
            if a:
                ne = [0] * len(variables)
                for j, x in zip(others, e):
                    ne[j] = x
                ne[qi] = k
                out[tuple(ne)] = out.get(tuple(ne), 0) + a
    return MPoly(variables, out)


def monomials_in(variables: Iterable[str]):
    variables = tuple(variables)
    return [MPoly.var(v, variables) for v in variables]
