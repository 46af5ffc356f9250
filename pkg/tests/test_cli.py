from __future__ import annotations

import dataclasses
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from qeuler import cli
from qeuler import grassmannian as gr
from qeuler.parser import parse_poly
from qeuler.qfield import RatFnQ
from qeuler.report import REPORT_KEYS, Report

QUADRATIC_Q = """\
# split quadratic over the Laurent ring
vars: x
weights: 2, 4
ground: Lambda
generators:
  x^2 - q
"""

DUAL_NUMBERS = """\
vars: x, y
ground: Q
generators:
  x^2
  y^2
"""


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run_cli(capsys, *argv, "--json", "--no-timings")
    return code, (json.loads(out) if out.strip() else None), err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text, encoding="utf-8")
        return str(p)
    return write


# -- exit codes --------------------------------------------------------------

def test_g24_quantum_verify(capsys):
    code, rep, _ = run_json(capsys, "grassmannian", "--k", "2", "--n", "4", "--quantum", "--verify-theorem")
    assert code == cli.EXIT_OK
    assert rep["dimension"] == 6
    assert rep["omega_unit"]["unit"] is True
    assert rep["epsilon"] == "-1"
    assert rep["reference_sign"] == 1


def test_classical_projective_is_not_semisimple(capsys):
    code, rep, _ = run_json(capsys, "projective", "--n", "3", "--classical")
    assert code == 0
    assert rep["semisimple"]["omega"]["semisimple"] is False
    assert rep["semisimple"]["agree"] is True
    assert rep["semisimple"]["omega"]["witness"]["numerator"] == "x1"


def test_cubic_surface_cli(capsys):
    code, rep, _ = run_json(capsys, "hypersurface", "--dim", "2", "--degrees", "3",
                            "--primitive-rank", "1", "--specialize", "1")
    assert code == 0
    assert rep["semisimple"]["omega"]["semisimple"] is False
    assert rep["details"]["witness_annihilates_omega"] is True
    assert rep["details"]["witness_survives_specialization"] is True
    assert rep["details"]["omega_closed_form"]["agrees"] is False


@pytest.mark.parametrize("argv", [
    ["grassmannian", "--k", "0", "--n", "3"],
    ["grassmannian", "--k", "4", "--n", "8"],
    ["hypersurface", "--dim", "3", "--degrees", "2", "--primitive-rank", "1"],
    ["hypersurface", "--dim", "2", "--degrees", "2,x", "--primitive-rank", "1"],
    ["hypersurface", "--dim", "4", "--degrees", "2", "--primitive-rank", "2"],
    ["grassmannian", "--k", "1", "--n", "2", "--specialize", "0"],
    ["analyze", "--presentation", "/nonexistent/file.txt"],
])
def test_invalid_input_exits_two(capsys, argv):
    code, _, err = run_cli(capsys, *argv)
    assert code == cli.EXIT_INVALID
    assert err.startswith("error:")


def test_argparse_errors_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["grassmannian", "--k", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        cli.main(["grassmannian", "--k", "1", "--n", "3", "--specialize", "abc"])
    assert exc.value.code == 2


def test_theorem_violation_exits_three(capsys, monkeypatch):
    real = gr.verify_hessian_theorem

    def broken(spec):
        return dataclasses.replace(real(spec), epsilon=None, unit_multiplier_is_unit=False)

    monkeypatch.setattr(gr, "verify_hessian_theorem", broken)
    code, out, err = run_cli(capsys, "grassmannian", "--k", "1", "--n", "3", "--verify-theorem",
                             "--json", "--no-timings")
    assert code == cli.EXIT_VIOLATION
    assert "violation" in err
    assert json.loads(out)["dimension"] == 3


def test_invalid_presentation_exits_two(capsys, files):
    path = files("inf.txt", "vars: x, y\nground: Q\ngenerators:\n  x*y\n")
    code, _, err = run_cli(capsys, "analyze", "--presentation", path)
    assert code == 2 and "error" in err
    bad = files("bad.txt", "vars: x\nground: Z\ngenerators:\n  x^2\n")
    assert run_cli(capsys, "analyze", "--presentation", bad)[0] == 2
    undeclared = files("undeclared.txt", "vars: x\nground: Q\ngenerators:\n  y^2\n")
    assert run_cli(capsys, "analyze", "--presentation", undeclared)[0] == 2


# -- serialization -----------------------------------------------------------

def test_json_round_trip(capsys):
    _, rep, _ = run_json(capsys, "grassmannian", "--k", "2", "--n", "5")
    assert Report.from_dict(rep).to_dict() == rep
    assert Report.from_json(json.dumps(rep)).to_dict() == rep


def test_text_round_trip_and_agreement(capsys):
    code, text, _ = run_cli(capsys, "hypersurface", "--dim", "2", "--degrees", "2",
                            "--primitive-rank", "1", "--specialize", "-1", "--no-timings")
    assert code == 0
    _, rep, _ = run_json(capsys, "hypersurface", "--dim", "2", "--degrees", "2",
                         "--primitive-rank", "1", "--specialize", "-1")
    assert Report.from_text(text).to_dict() == rep
    assert Report.from_text(text).to_text() == text.rstrip("\n")


def test_schema_keys_are_stable(capsys):
    for argv in (["projective", "--n", "2"],
                 ["hypersurface", "--dim", "2", "--degrees", "3", "--primitive-rank", "1"]):
        _, rep, _ = run_json(capsys, *argv)
        assert tuple(rep) == REPORT_KEYS
        assert rep["schema"] == 1


def test_output_is_deterministic_without_timings(capsys):
    argv = ["grassmannian", "--k", "2", "--n", "4", "--specialize", "1/3", "--json", "--no-timings"]
    outs = {run_cli(capsys, *argv)[1] for _ in range(3)}
    assert len(outs) == 1


def test_timings_are_reported(capsys):
    _, out, _ = run_cli(capsys, "projective", "--n", "2", "--json")
    t = json.loads(out)["timings"]
    assert "build" in t and all(v >= 0 for v in t.values())


@pytest.mark.parametrize("k,n", [(1, 3), (2, 4)])
def test_printed_polynomials_reparse(capsys, k, n):
    _, rep, _ = run_json(capsys, "grassmannian", "--k", str(k), "--n", str(n))
    G = gr.build(gr.GrassmannianSpec(k, n))
    A = G.algebra
    V = tuple(rep["variables"])

    def value(record):
        p = A.from_poly(parse_poly(record["numerator"], V))
        return p * RatFnQ.q(-record["q_shift"])

    assert value(rep["omega"]) == G.omega
    assert value(rep["omega_unit"]["inverse"]) * G.omega == A.one
    assert [str(A.from_poly(parse_poly(b, V)).coords.index(1)) for b in rep["basis"]] == \
        [str(i) for i in range(A.dim)]


def test_specialization_details(capsys):
    _, rep, _ = run_json(capsys, "projective", "--n", "2", "--specialize", "4")
    spec = rep["details"]["specialization"]
    assert spec["r"] == "4" and spec["omega_matches_image"] is True
    assert rep["semisimple"]["trace_oracle"]["semisimple"] is True
    _, rep, _ = run_json(capsys, "projective", "--n", "2")
    assert rep["semisimple"]["trace_oracle"] is None


def test_pairing_file(capsys, files):
    path = files("pairing.txt", "2 1\n1 3\n")
    code, rep, _ = run_json(capsys, "hypersurface", "--dim", "4", "--degrees", "3",
                            "--primitive-rank", "2", "--pairing", path)
    assert code == 0
    _, ref, _ = run_json(capsys, "hypersurface", "--dim", "4", "--degrees", "3", "--primitive-rank", "2")
    assert rep["omega"] == ref["omega"]
    singular = files("singular.txt", "1 1\n1 1\n")
    assert run_cli(capsys, "hypersurface", "--dim", "4", "--degrees", "3",
                   "--primitive-rank", "2", "--pairing", singular)[0] == 2


# -- analyze -----------------------------------------------------------------

def test_analyze_dry_run(capsys, files):
    code, out, _ = run_cli(capsys, "analyze", "--presentation", files("d.txt", DUAL_NUMBERS), "--dry-run")
    assert code == 0 and out.strip() == "basis: 1, y, x, x*y"


def test_analyze_dual_numbers_auto(capsys, files):
    code, rep, _ = run_json(capsys, "analyze", "--presentation", files("d.txt", DUAL_NUMBERS))
    assert code == 0 and rep["dimension"] == 4
    assert rep["semisimple"]["omega"]["semisimple"] is False
    assert rep["semisimple"]["agree"] is True


def test_analyze_lambda_with_specialization(capsys, files):
    path = files("q.txt", QUADRATIC_Q)
    code, rep, _ = run_json(capsys, "analyze", "--presentation", path, "--specialize", "4")
    assert code == 0
    assert rep["omega_unit"]["unit"] is True
    assert rep["semisimple"]["omega"]["semisimple"] is True
    assert rep["semisimple"]["trace_oracle"]["semisimple"] is True


def test_analyze_explicit_functional(capsys, files):
    path = files("sq.txt", "vars: x\nground: Q\ngenerators:\n  x^2 - x\n")
    fpath = files("f.txt", "0, 1\n")
    code, rep, _ = run_json(capsys, "analyze", "--presentation", path, "--functional", fpath)
    assert code == 0
    assert rep["semisimple"]["omega"]["semisimple"] is True
    assert rep["details"]["functional_choice"] == "explicit"
    # Gram matrix [[1, 1], [1, 1]] is singular
    degenerate = files("g.txt", "1 1\n")
    assert run_cli(capsys, "analyze", "--presentation", path, "--functional", degenerate)[0] == 2
    zero = files("z.txt", "0 0\n")
    assert run_cli(capsys, "analyze", "--presentation", path, "--functional", zero)[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "qeuler", "projective", "--n", "2", "--no-timings"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert "dimension: 2" in proc.stdout
