"""Command line front end.

Exit codes: 0 success, 2 invalid input, 3 a checked identity failed.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import grassmannian as gr
from . import hypersurface as hs
from .algebra import NotAFieldError, StructureError, is_semisimple_trace_oracle, is_unit
from .frobenius import DegenerateFormError, FrobeniusData, is_semisimple_via_omega
from .groebner import InfiniteDimensionalError
from .parser import ParseError
from .presentation import (
    PresentationError,
    frobenius_from_presentation,
    parse_presentation,
)
from .qfield import LAMBDA
from .report import Report, Timer, element_record, scalar_text, unit_record, verdict_record
from .specialization import (
    InvariantViolation,
    SpecializationError,
    specialize_algebra,
    specialize_element,
)

EXIT_OK, EXIT_INVALID, EXIT_VIOLATION = 0, 2, 3

VALIDATION_ERRORS = (
    gr.GrassmannianError, hs.HypersurfaceError, PresentationError, ParseError,
    StructureError, DegenerateFormError, InfiniteDimensionalError, SpecializationError,
    NotAFieldError, OSError, ValueError,
)
VIOLATIONS = (InvariantViolation, gr.NormalizationError)


class TheoremViolation(Exception):
    def __init__(self, message: str, report: Report | None = None):
        super().__init__(message)
        self.report = report


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _poly_variables(F: FrobeniusData) -> list[str]:
    A = F.algebra
    names = list(A.variables or ())
    return names + (["q"] if A.ground == LAMBDA else [])


def _base_report(subject: dict, F: FrobeniusData) -> Report:
    A = F.algebra
    return Report(
        subject=subject,
        dimension=A.dim,
        basis=list(A.labels),
        variables=_poly_variables(F),
        omega=element_record(F.omega),
        omega_unit=unit_record(is_unit(F.omega)),
        semisimple={},
    )


def _semisimplicity(report: Report, F: FrobeniusData, r, timer: Timer) -> FrobeniusData:
    """Fill in both tests, specializing first when the ground is Lambda and r is given.

    Returns the Frobenius data the tests ran on.
    """
    if F.algebra.ground == LAMBDA and r is not None:
        with timer.phase("specialize"):
            FB = specialize_algebra(F, r)
        report.details["specialization"] = {
            "r": scalar_text(r),
            "omega": element_record(FB.omega),
            "omega_matches_image": specialize_element(F.omega, r, FB.algebra) == FB.omega,
        }
        target = FB
    else:
        target = F
    with timer.phase("semisimplicity"):
        ov = is_semisimple_via_omega(target)
        tv = is_semisimple_trace_oracle(target.algebra) if target.algebra.ground != LAMBDA else None
    report.semisimple = {"omega": verdict_record(ov), "trace_oracle": verdict_record(tv)}
    report.semisimple["agree"] = None if tv is None else ov.semisimple == tv.semisimple
    return target


def grassmannian_report(k: int, n: int, quantum: bool, specialize=None,
                        verify: bool = False, timings: bool = True) -> Report:
    timer = Timer(timings)
    spec = gr.GrassmannianSpec(k, n, quantum)
    with timer.phase("build"):
        G = gr.build(spec)
    F = G.frobenius
    subject = {"kind": "grassmannian", "k": k, "n": n, "quantum": quantum}
    report = _base_report(subject, F)
    _semisimplicity(report, F, specialize, timer)
    with timer.phase("hessian"):
        H = gr.verify_hessian_theorem(spec)
    report.hessian = element_record(H.hessian_nf)
    report.epsilon = scalar_text(H.epsilon) if H.epsilon is not None else None
    report.reference_sign = H.reference_sign
    report.details["hessian_unit_multiplier"] = (
        element_record(H.unit_multiplier) if H.unit_multiplier is not None else None)
    report.details["hessian_multiplier_is_unit"] = H.unit_multiplier_is_unit
    report.details["functional_sign"] = spec.point_sign
    if not quantum:
        with timer.phase("poincare_duality"):
            report.details["poincare_duality"] = gr.poincare_duality_holds(G)
    report.timings = timer.phases
    if verify:
        problems = []
        if H.violation:
            problems.append("Hessian is not a unit multiple of omega")
        if H.epsilon is not None and abs(H.epsilon) != 1:
            problems.append(f"Hessian/omega ratio {H.epsilon} is not +-1")
        if quantum and not report.omega_unit["unit"]:
            problems.append("quantum Euler class is not a unit of the extension")
        if problems:
            raise TheoremViolation("; ".join(problems), report)
    return report


def _read_pairing(path: str) -> list[list[Fraction]]:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if line:
            rows.append([Fraction(x) for x in line.split()])
    return rows


def hypersurface_report(n: int, degrees, R: int, pairing=None, specialize=None,
                        timings: bool = True) -> Report:
    timer = Timer(timings)
    spec = hs.HypersurfaceSpec(n, tuple(degrees), R, pairing)
    with timer.phase("build"):
        F = hs.build_hypersurface_algebra(spec)
    subject = {
        "kind": "hypersurface", "n": n, "degrees": list(spec.degrees), "R": R,
        "d": spec.d, "D": spec.D, "q_weight": spec.q_weight,
        "pairing": [[scalar_text(x) for x in row] for row in spec.pairing],
    }
    report = _base_report(subject, F)
    witness = None
    if spec.d > 2 and R >= 1:
        witness = hs.primitive(F, spec, 1)
        report.details["witness_annihilates_omega"] = (F.omega * witness).is_zero()
    target = _semisimplicity(report, F, specialize, timer)
    target_witness = witness
    if witness is not None and target is not F:
        target_witness = specialize_element(witness, specialize, target.algebra)
        report.details["witness_survives_specialization"] = not target_witness.is_zero()
    if target_witness is not None and not report.semisimple["omega"]["semisimple"]:
        report.semisimple["omega"]["witness"] = element_record(target_witness)
    report.details["grading_consistent"] = hs.grading_consistent(spec)
    if len(spec.degrees) == 1:
        cmp = hs.omega_closed_form(spec, F)
        report.details["omega_closed_form"] = {
            "formula": element_record(cmp.closed_form_value), "agrees": cmp.agree}
    pattern = hs.omega_matrix_pattern(F, spec)
    report.details["omega_matrix"] = {
        "block_diagonal": pattern["block_diagonal"],
        "primitive_block_scalar": None if pattern["primitive_block_scalar"] is None
        else scalar_text(pattern["primitive_block_scalar"]),
        "gamma_block_scalar": None if pattern["gamma_block_scalar"] is None
        else scalar_text(pattern["gamma_block_scalar"]),
        "diagonal": [scalar_text(x) for x in pattern["diagonal"]],
    }
    report.timings = timer.phases
    return report


def analyze_report(text: str, functional=None, specialize=None, timings: bool = True) -> Report:
    timer = Timer(timings)
    P = parse_presentation(text)
    with timer.phase("build"):
        F, how = frobenius_from_presentation(P, functional)
    subject = {"kind": "custom", "ground": P.ground.name,
               "generators": [str(g) for g in P.generators]}
    report = _base_report(subject, F)
    report.details["functional"] = [scalar_text(v) for v in F.functional]
    report.details["functional_choice"] = how
    report.details["homogeneous"] = P.is_homogeneous()
    _semisimplicity(report, F, specialize, timer)
    report.timings = timer.phases
    return report


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit the report as JSON")
    common.add_argument("--no-timings", action="store_true",
                        help="omit wall-clock timings (byte-identical output across runs)")

    p = argparse.ArgumentParser(prog="qeuler", description=(
        "Frobenius algebras, quantum Euler classes and semisimplicity, computed exactly."))
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("grassmannian", parents=[common], help="(quantum) cohomology of G(k,n)")
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    mode = g.add_mutually_exclusive_group()
    mode.add_argument("--quantum", dest="quantum", action="store_true", default=True)
    mode.add_argument("--classical", dest="quantum", action="store_false")
    g.add_argument("--specialize", type=_rational, metavar="R", help="set q = R before testing")
    g.add_argument("--verify-theorem", action="store_true",
                   help="exit 3 unless the Hessian is +-1 times the Euler class")

    pr = sub.add_parser("projective", parents=[common], help="projective space (k = 1)")
    pr.add_argument("--n", type=int, required=True)
    mode = pr.add_mutually_exclusive_group()
    mode.add_argument("--quantum", dest="quantum", action="store_true", default=True)
    mode.add_argument("--classical", dest="quantum", action="store_false")
    pr.add_argument("--specialize", type=_rational, metavar="R")
    pr.add_argument("--verify-theorem", action="store_true")

    h = sub.add_parser("hypersurface", parents=[common], help="complete intersections")
    h.add_argument("--dim", type=int, required=True, help="even complex dimension n")
    h.add_argument("--degrees", required=True, help="comma separated degrees, e.g. 3 or 2,2")
    h.add_argument("--primitive-rank", type=int, required=True, metavar="R")
    h.add_argument("--pairing", metavar="FILE", help="R x R rational matrix, one row per line")
    h.add_argument("--specialize", type=_rational, metavar="R")

    a = sub.add_parser("analyze", parents=[common], help="an algebra given by a presentation file")
    a.add_argument("--presentation", required=True, metavar="FILE")
    a.add_argument("--functional", default=None, metavar="auto|FILE")
    a.add_argument("--specialize", type=_rational, metavar="R")
    a.add_argument("--dry-run", action="store_true", help="print the basis and stop")
    return p


def _degrees(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise hs.HypersurfaceError(f"bad degree list {text!r}") from None


def run(args) -> Report | None:
    timings = not args.no_timings
    if args.command == "grassmannian":
        return grassmannian_report(args.k, args.n, args.quantum, args.specialize,
                                   args.verify_theorem, timings)
    if args.command == "projective":
        return grassmannian_report(1, args.n, args.quantum, args.specialize,
                                   args.verify_theorem, timings)
    if args.command == "hypersurface":
        pairing = _read_pairing(args.pairing) if args.pairing else None
        return hypersurface_report(args.dim, _degrees(args.degrees), args.primitive_rank,
                                   pairing, args.specialize, timings)
    text = Path(args.presentation).read_text(encoding="utf-8")
    if args.dry_run:
        A = parse_presentation(text).build()
        print("basis: " + ", ".join(A.labels))
        return None
    functional = args.functional
    if functional is not None and functional != "auto":
        functional = Path(functional).read_text(encoding="utf-8").replace(",", " ").split()
    return analyze_report(text, functional, args.specialize, timings)


def emit(report: Report, as_json: bool, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write((report.to_json() if as_json else report.to_text()) + "\n")


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        report = run(args)
    except TheoremViolation as exc:
        if exc.report is not None:
            emit(exc.report, args.json)
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except VIOLATIONS as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except VALIDATION_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    if report is not None:
        emit(report, args.json)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
