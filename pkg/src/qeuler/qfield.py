"""Scalars: rationals, rational functions in ``q`` and the two ground rings.

Univariate polynomials in ``q`` are plain tuples of ``Fraction`` ordered from
the constant term upward, with no trailing zeros (the zero polynomial is the
empty tuple).  :class:`RatFnQ` wraps a reduced numerator/denominator pair of
such tuples with a monic denominator.
"""

from __future__ import annotations

from fractions import Fraction
from typing import NamedTuple, Union

Rational = Fraction
UPoly = tuple

Scalar = Union[int, Fraction, "RatFnQ"]


# -- univariate polynomial helpers ------------------------------------------

def upoly(coeffs) -> UPoly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def u_add(a: UPoly, b: UPoly) -> UPoly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def u_neg(a: UPoly) -> UPoly:
    return tuple(-x for x in a)


def u_sub(a: UPoly, b: UPoly) -> UPoly:
    return u_add(a, u_neg(b))


def u_mul(a: UPoly, b: UPoly) -> UPoly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return tuple(a[0] * x for x in b)
    if len(b) == 1:
        return tuple(b[0] * x for x in a)
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return tuple(out)


def u_scale(a: UPoly, c) -> UPoly:
    if c == 0:
        return ()
    return tuple(c * x for x in a)


def u_divmod(a: UPoly, b: UPoly) -> tuple[UPoly, UPoly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(rem) <= db:
        return (), tuple(rem)
    quo = [Fraction(0)] * (len(rem) - db)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            c = c / lead
            quo[k - db] = c
            for j, y in enumerate(b):
                rem[k - db + j] -= c * y
    rem = rem[:db]
    while rem and rem[-1] == 0:
        rem.pop()
    return upoly(quo), tuple(rem)


def u_monic(a: UPoly) -> UPoly:
    if not a or a[-1] == 1:
        return a
    lead = a[-1]
    return tuple(x / lead for x in a)


def u_gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic gcd by the Euclidean algorithm."""
    while b:
        a, b = b, u_divmod(a, b)[1]
    return u_monic(a)


def u_valuation(a: UPoly) -> int:
    for i, x in enumerate(a):
        if x:
            return i
    raise ValueError("valuation of zero polynomial")


def u_eval(a: UPoly, r) -> Fraction:
    acc = Fraction(0)
    for x in reversed(a):
        acc = acc * r + x
    return acc


def _fmt_rat(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def u_format(a: UPoly, var: str = "q") -> str:
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if i == 0:
            body = _fmt_rat(mag)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if mag == 1 else f"{_fmt_rat(mag)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


_ONE: UPoly = (Fraction(1),)


def _is_q_power(d: UPoly) -> bool:
    return d[-1] == 1 and all(x == 0 for x in d[:-1])


# -- rational functions ------------------------------------------------------

class RatFnQ:
    """Element of Q(q) in lowest terms with monic denominator.

    Equality is representational; the canonical form makes that the same as
    equality of rational functions.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num=(), den=_ONE, _normalized: bool = False):
        if isinstance(num, (int, Fraction)):
            num = upoly((num,))
        if isinstance(den, (int, Fraction)):
            den = upoly((den,))
        if _normalized:
            self.num, self.den = num, den
        else:
            self.num, self.den = _normalize(upoly(num), upoly(den))
        self._hash = None

    @classmethod
    def q(cls, power: int = 1) -> "RatFnQ":
        if power >= 0:
            return cls((0,) * power + (1,))
        return cls(_ONE, (0,) * (-power) + (1,))

    # coercion
    @staticmethod
    def coerce(x) -> "RatFnQ":
        if isinstance(x, RatFnQ):
            return x
        if isinstance(x, (int, Fraction)):
            return RatFnQ(upoly((x,)), _ONE, _normalized=True)
        return NotImplemented

    def __add__(self, other):
        other = RatFnQ.coerce(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            if self.den == _ONE:
                return RatFnQ(u_add(self.num, other.num), _ONE, _normalized=True)
            return RatFnQ(u_add(self.num, other.num), self.den)
        return RatFnQ(u_add(u_mul(self.num, other.den), u_mul(other.num, self.den)),
                      u_mul(self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFnQ(u_neg(self.num), self.den, _normalized=True)

    def __sub__(self, other):
        other = RatFnQ.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return RatFnQ((), _ONE, _normalized=True)
            return RatFnQ(u_scale(self.num, Fraction(other)), self.den, _normalized=True)
        other = RatFnQ.coerce(other)
        if other is NotImplemented:
            return other
        if self.den == _ONE and other.den == _ONE:
            return RatFnQ(u_mul(self.num, other.num), _ONE, _normalized=True)
        return RatFnQ(u_mul(self.num, other.num), u_mul(self.den, other.den))

    __rmul__ = __mul__

    def inverse(self) -> "RatFnQ":
        if not self.num:
            raise ZeroDivisionError("inverse of zero in Q(q)")
        return RatFnQ(self.den, self.num)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return RatFnQ(u_scale(self.num, 1 / Fraction(other)), self.den, _normalized=True)
        other = RatFnQ.coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return RatFnQ.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = RatFnQ(1)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, RatFnQ):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.num
            return self.den == _ONE and self.num == (Fraction(other),)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.den == _ONE and len(self.num) <= 1:
                self._hash = hash(self.num[0] if self.num else 0)
            else:
                self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.den == _ONE and len(self.num) <= 1

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self.num[0] if self.num else Fraction(0)

    def is_laurent(self) -> bool:
        """True when the value lies in Q[q, 1/q]."""
        return _is_q_power(self.den)

    def laurent_terms(self) -> dict[int, Fraction]:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        shift = len(self.den) - 1
        return {i - shift: c for i, c in enumerate(self.num) if c}

    def evaluate(self, r) -> Fraction:
        r = Fraction(r)
        d = u_eval(self.den, r)
        if d == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at q = {r}")
        return u_eval(self.num, r) / d

    def __repr__(self):
        return f"RatFnQ({self})"

    def __str__(self):
        if self.den == _ONE:
            return u_format(self.num)
        return f"({u_format(self.num)})/({u_format(self.den)})"


def _normalize(num: UPoly, den: UPoly) -> tuple[UPoly, UPoly]:
    if not den:
        raise ZeroDivisionError("zero denominator")
    if not num:
        return (), _ONE
    if den == _ONE:
        return num, den
    if len(den) == 1:
        return u_scale(num, 1 / den[0]), _ONE
    if _is_q_power(den):
        m = min(len(den) - 1, u_valuation(num))
        return num[m:], den[m:]
    g = u_gcd(num, den)
    if len(g) > 1:
        num = u_divmod(num, g)[0]
        den = u_divmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        num = u_scale(num, 1 / lead)
        den = u_scale(den, 1 / lead)
    return num, den


def ratfn_normalize(numerator, denominator) -> RatFnQ:
    """Canonical ``numerator/denominator`` from coefficient sequences (low degree first)."""
    return RatFnQ(upoly(numerator), upoly(denominator))


class LaurentVerdict(NamedTuple):
    kind: str  # "unit", "nonunit" or "zero"
    coeff: Fraction | None = None
    shift: int | None = None


def laurent_unit_test(v) -> LaurentVerdict:
    """Decide whether ``v`` is a unit ``c*q^m`` of Q[q, 1/q]."""
    v = RatFnQ.coerce(v)
    if not v.num:
        return LaurentVerdict("zero")
    if not v.is_laurent():
        return LaurentVerdict("nonunit")
    terms = v.laurent_terms()
    if len(terms) != 1:
        return LaurentVerdict("nonunit")
    (m, c), = terms.items()
    return LaurentVerdict("unit", c, m)


# -- ground rings ------------------------------------------------------------

class Ground:
    """Coefficient domain descriptor: ``Q`` or ``Lambda`` (= Q[q, 1/q])."""

    def __init__(self, name: str):
        self.name = name

    @property
    def is_field(self) -> bool:
        return self.name == "Q"

    @property
    def zero(self):
        return Fraction(0) if self.is_field else RatFnQ(0)

    @property
    def one(self):
        return Fraction(1) if self.is_field else RatFnQ(1)

    def convert(self, x):
        if self.is_field:
            if isinstance(x, RatFnQ):
                return x.constant()
            if isinstance(x, (int, Fraction)):
                return Fraction(x)
            raise TypeError(f"cannot convert {x!r} to {self.name}")
        out = RatFnQ.coerce(x)
        if out is NotImplemented:
            raise TypeError(f"cannot convert {x!r} to {self.name}")
        return out

    def is_unit(self, x) -> bool:
        if self.is_field:
            return x != 0
        return laurent_unit_test(x).kind == "unit"

    def format(self, x) -> str:
        if isinstance(x, Fraction):
            return _fmt_rat(x)
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Ground) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return self.name


QQ = Ground("Q")
LAMBDA = Ground("Lambda")


def ground_from_name(name: str) -> Ground:
    key = name.strip()
    if key in ("Q", "QQ"):
        return QQ
    if key in ("Lambda", "L", "Laurent"):
        return LAMBDA
    raise ValueError(f"unknown ground ring {name!r}; expected Q or Lambda")
