"""Machine- and human-readable reports produced by the command line tool.

A report is a flat-ish record with a fixed set of top-level keys; see
``REPORT_KEYS``.  The text rendering is one ``key: value`` line per leaf of
the JSON document (dotted keys, JSON-encoded values), so both forms carry
exactly the same information and either can be parsed back.
"""

from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .algebra import AlgebraElement, SemisimplicityVerdict, UnitVerdict
from .qfield import LAMBDA, RatFnQ, laurent_unit_test

SCHEMA_VERSION = 1

REPORT_KEYS = (
    "schema", "subject", "dimension", "basis", "variables", "omega", "omega_unit",
    "semisimple", "hessian", "epsilon", "reference_sign", "details", "timings",
)


def scalar_text(c) -> str:
    if isinstance(c, RatFnQ):
        return str(c)
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def laurent_split(a: AlgebraElement) -> tuple[int, AlgebraElement]:
    """(s, p) with a = q^(-s) * p and p free of negative powers of q."""
    if a.algebra.ground != LAMBDA:
        return 0, a
    s = 0
    for c in a.coords:
        c = RatFnQ.coerce(c)
        if c.num:
            s = max(s, -min(c.laurent_terms()))
    return s, a * RatFnQ.q(s) if s else a


def element_record(a: AlgebraElement) -> dict:
    """Printable polynomial form of an element: value = numerator * q^(-q_shift)."""
    s, p = laurent_split(a)
    return {"numerator": str(p), "q_shift": s}


def unit_record(v: UnitVerdict) -> dict:
    rec = {"unit": v.is_unit, "kind": v.kind, "det": scalar_text(v.det)}
    lt = laurent_unit_test(v.det) if isinstance(v.det, RatFnQ) else None
    if lt is not None and lt.kind == "unit":
        rec["det_laurent"] = [scalar_text(lt.coeff), lt.shift]
    else:
        rec["det_laurent"] = None
    rec["inverse"] = element_record(v.inverse) if v.inverse is not None else None
    rec["witness"] = element_record(v.witness) if v.witness is not None else None
    return rec


def verdict_record(v: SemisimplicityVerdict | None, witness: AlgebraElement | None = None) -> dict | None:
    if v is None:
        return None
    w = witness if witness is not None else v.witness
    return {"semisimple": v.semisimple, "witness": element_record(w) if w is not None else None,
            "detail": v.detail}


@dataclass
class Report:
    subject: dict
    dimension: int
    basis: list
    variables: list
    omega: dict
    omega_unit: dict
    semisimple: dict
    hessian: dict | None = None
    epsilon: str | None = None
    reference_sign: int | None = None
    details: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    schema: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        d = asdict(self)
        return {k: d[k] for k in REPORT_KEYS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        missing = set(REPORT_KEYS) - set(d)
        if missing:
            raise ValueError(f"report lacks keys {sorted(missing)}")
        return cls(**{k: d[k] for k in REPORT_KEYS})

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        return "\n".join(f"{k}: {json.dumps(v)}" for k, v in flatten(self.to_dict()))

    @classmethod
    def from_text(cls, text: str) -> "Report":
        pairs = []
        for line in text.splitlines():
            if not line.strip():
                continue
            key, _, value = line.partition(": ")
            pairs.append((key, json.loads(value)))
        return cls.from_dict(unflatten(pairs))


def flatten(d, prefix: str = ""):
    """Leaves of a nested dict as (dotted key, value); empty dicts are kept as leaves."""
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict) and v:
            yield from flatten(v, key + ".")
        else:
            yield key, v


def unflatten(pairs) -> dict:
    out: dict = {}
    for key, v in pairs:
        *path, last = key.split(".")
        node = out
        for p in path:
            node = node.setdefault(p, {})
        node[last] = v
    return out


class Timer:
    """Collects wall-clock milliseconds per named phase."""

    def __init__(self, enabled: bool = True):
        self.enabled = enabled
        self.phases: dict[str, float] = {}

    @contextmanager
    def phase(self, name: str):
        t0 = time.perf_counter()
        try:
            yield
        finally:
            if self.enabled:
                self.phases[name] = round((time.perf_counter() - t0) * 1000, 3)
