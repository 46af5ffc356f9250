"""Text presentations of algebras and the automatic choice of a Frobenius form.

File layout (UTF-8, ``#`` starts a comment)::

    vars: x, y
    weights: 2, 2          # optional
    ground: Q              # or Lambda; then q may appear in generators
    generators:
    x^2
    y^2
    functional: auto       # optional; or comma separated values on the basis
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .algebra import QuotientAlgebra, build_quotient_algebra, socle
from .frobenius import DegenerateFormError, FrobeniusData, frobenius_structure
from .parser import ParseError, parse_poly
from .poly import MPoly
from .qfield import LAMBDA, QQ, RatFnQ, ground_from_name, laurent_unit_test

_HEADER = re.compile(r"^([A-Za-z_]+)\s*:\s*(.*)$")
AUTO_T_ATTEMPTS = 16


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    variables: tuple[str, ...]
    ground: object
    generators: tuple[MPoly, ...]
    weights: tuple[int, ...] | None = None
    functional: object = None  # None, "auto" or a tuple of value strings

    def poly_variables(self) -> tuple[str, ...]:
        return self.variables + (("q",) if self.ground == LAMBDA else ())

    def is_homogeneous(self) -> bool | None:
        if self.weights is None:
            return None
        return all(g.is_weighted_homogeneous() for g in self.generators)

    def build(self) -> QuotientAlgebra:
        return build_quotient_algebra(self.generators, self.variables, self.ground)


def _split_list(text: str) -> list[str]:
    return [t for t in (s.strip() for s in re.split(r"[,\s]+", text)) if t]


def parse_presentation(text: str) -> Presentation:
    fields: dict[str, str] = {}
    generators: list[str] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _HEADER.match(line)
        if m:
            key, value = m.group(1).lower(), m.group(2).strip()
            if key not in {"vars", "weights", "ground", "generators", "functional"}:
                raise PresentationError(f"line {lineno}: unknown header {key!r}")
            if key in fields:
                raise PresentationError(f"line {lineno}: duplicate header {key!r}")
            fields[key] = value
            section = key
            if key == "generators" and value:
                generators.append(value)
            continue
        if section == "generators":
            generators.append(line)
        elif section == "functional":
            fields["functional"] = (fields["functional"] + " " + line).strip()
        else:
            raise PresentationError(f"line {lineno}: text outside a section")
    for key in ("vars", "ground", "generators"):
        if key not in fields:
            raise PresentationError(f"missing header {key!r}")
    variables = tuple(_split_list(fields["vars"]))
    if not variables:
        raise PresentationError("no variables declared")
    if len(set(variables)) != len(variables):
        raise PresentationError("repeated variable name")
    try:
        ground = ground_from_name(fields["ground"])
    except ValueError as exc:
        raise PresentationError(str(exc)) from None
    if ground == LAMBDA and "q" in variables:
        raise PresentationError("q is the coefficient variable over Lambda; do not declare it")
    pvars = variables + (("q",) if ground == LAMBDA else ())
    weights = None
    if "weights" in fields:
        try:
            w = tuple(int(x) for x in _split_list(fields["weights"]))
        except ValueError:
            raise PresentationError("weights must be integers") from None
        if ground == LAMBDA and len(w) == len(variables):
            raise PresentationError("over Lambda give a weight for q as well (last)")
        if len(w) != len(pvars) or any(x <= 0 or x % 2 for x in w):
            raise PresentationError("weights must be positive even integers, one per variable")
        weights = w
    if not generators:
        raise PresentationError("no generators given")
    polys = []
    for g in generators:
        try:
            p = parse_poly(g, pvars)
        except ParseError as exc:
            raise PresentationError(f"generator {g!r}: {exc}") from None
        polys.append(p.with_weights(weights) if weights else p)
    functional = None
    if "functional" in fields:
        value = fields["functional"]
        functional = "auto" if value.lower() == "auto" else tuple(_split_list(value))
    return Presentation(variables, ground, tuple(polys), weights, functional)


def parse_functional_values(values: Sequence[str], ground) -> list:
    """Scalars from text: rationals over Q, polynomials in q over Lambda."""
    out = []
    for v in values:
        names = ("q",) if ground == LAMBDA else ()
        try:
            p = parse_poly(v, names)
        except ParseError as exc:
            raise PresentationError(f"functional value {v!r}: {exc}") from None
        if ground == LAMBDA:
            coeffs = [Fraction(0)] * (p.total_degree() + 1 if not p.is_zero() else 0)
            for (e,), c in p.terms.items():
                coeffs[e] = c
            out.append(RatFnQ(tuple(coeffs)))
        else:
            out.append(p.constant_term())
    return out


def _nondegenerate(A: QuotientAlgebra, f) -> bool:
    gram = [[sum((c * v for c, v in zip(A.table[i][j], f) if c != 0 and v != 0), A.ground.zero)
             for j in range(A.dim)] for i in range(A.dim)]
    d = linalg.det(gram, A.ground)
    if A.ground == QQ:
        return d != 0
    return laurent_unit_test(d).kind == "unit"


def auto_functional(A: QuotientAlgebra) -> tuple[list, str]:
    """A Frobenius form chosen deterministically, with a note on how.

    Candidates are the coordinate functionals of the basis monomials that
    are pivots of the socle (over Q; over Lambda all basis monomials), tried
    from the highest basis position down.  If none is nondegenerate the
    family sum_i t^i x_i^* for t = 1, 2, ... is tried, scaled to take the
    value 1 on the first socle vector.
    """
    n = A.dim
    if A.ground == QQ:
        soc = [s.coords for s in socle(A)]
        R, pivots = linalg.rref([list(v) for v in soc], A.ground)
        candidates = sorted(pivots, reverse=True)
        first = A.element(R[0]) if R else A.one
    else:
        candidates = list(range(n - 1, -1, -1))
        first = A.basis(n - 1)
    for i in candidates:
        f = [A.ground.one if k == i else A.ground.zero for k in range(n)]
        if _nondegenerate(A, f):
            return f, f"dual of basis element {A.labels[i]}"
    for t in range(1, AUTO_T_ATTEMPTS + 1):
        f = [A.ground.convert(Fraction(t) ** k) for k in range(n)]
        val = sum((c * v for c, v in zip(first.coords, f) if c != 0), A.ground.zero)
        if val != 0:
            f = [v / val for v in f]
        if _nondegenerate(A, f):
            return f, f"power family with t = {t}"
    raise DegenerateFormError("no nondegenerate form found; the algebra may not be Frobenius")


def frobenius_from_presentation(P: Presentation, functional=None) -> tuple[FrobeniusData, str]:
    """Build the algebra and attach the requested form ("auto" when unspecified)."""
    A = P.build()
    spec = functional if functional is not None else (P.functional or "auto")
    if spec == "auto":
        f, how = auto_functional(A)
    else:
        f = parse_functional_values(spec, A.ground) if isinstance(spec[0], str) else list(spec)
        if len(f) != A.dim:
            raise PresentationError(
                f"functional has {len(f)} values but the basis {list(A.labels)} has {A.dim}")
        how = "explicit"
    return frobenius_structure(A, f), how
