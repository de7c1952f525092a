"""Command-line interface: verbs, exit codes, determinism, round trips."""

import json
from fractions import Fraction

import pytest

from qmb.cli import (
    EXIT_CHECK_FAILED,
    EXIT_DEGREE_CAP,
    EXIT_OK,
    EXIT_PRECONDITION,
    EXIT_UNSAT,
    EXIT_USAGE,
    main,
)
from qmb.exprparse import parse_element
from qmb.minors import quantum_minor
from qmb.scalars import Q


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestNf:
    def test_cross_relation_output(self, capsys):
        code, out, _ = run(capsys, "nf", "--n", "2", "t[2,2]*t[1,1]")
        assert code == EXIT_OK
        got = parse_element(out.strip(), 2)
        t = lambda i, j: parse_element(f"t[{i},{j}]", 2)  # noqa: E731
        assert got == t(1, 1) * t(2, 2) - (Q - Q**-1) * (t(1, 2) * t(2, 1))

    def test_round_trip(self, capsys):
        code, out, _ = run(capsys, "nf", "--n", "2", "(q^-1 - q) * t[1,2] t[2,1] + t[1,1]")
        assert code == EXIT_OK
        assert parse_element(out.strip(), 2).render() == out.strip()

    def test_determinism(self, capsys):
        _, out1, _ = run(capsys, "nf", "--n", "3", "D[{1,2},{2,3}] * t[1,1] - q*t[3,3]")
        _, out2, _ = run(capsys, "nf", "--n", "3", "D[{1,2},{2,3}] * t[1,1] - q*t[3,3]")
        assert out1 == out2

    def test_syntax_error_exit(self, capsys):
        code, _, err = run(capsys, "nf", "--n", "2", "t[1,1] +")
        assert code == EXIT_USAGE
        assert "syntax error" in err

    def test_out_of_range_index(self, capsys):
        code, _, err = run(capsys, "nf", "--n", "2", "t[3,1]")
        assert code == EXIT_USAGE
        assert "out of range" in err

    def test_degree_cap_exit(self, capsys, monkeypatch):
        monkeypatch.setenv("QMB_MAX_DEGREE", "2")
        code, _, err = run(capsys, "nf", "--n", "2", "t[1,1]*t[1,1]*t[1,1]")
        assert code == EXIT_DEGREE_CAP


class TestMinorVerb:
    def test_matches_library(self, capsys):
        code, out, _ = run(capsys, "minor", "--n", "3", "--rows", "1,2", "--cols", "1,3")
        assert code == EXIT_OK
        assert out.strip() == quantum_minor(3, (1, 2), (1, 3)).render()

    def test_expression_D_equals_minor_verb(self, capsys):
        _, out, _ = run(capsys, "nf", "--n", "3", "D[{1,2},{1,3}]")
        assert out.strip() == quantum_minor(3, (1, 2), (1, 3)).render()

    def test_bad_labels(self, capsys):
        code, _, err = run(capsys, "minor", "--n", "2", "--rows", "1,2", "--cols", "1,3")
        assert code == EXIT_PRECONDITION


class TestCommutatorVerb:
    def test_example(self, capsys):
        code, out, _ = run(capsys, "commutator", "--n", "2", "t[1,1]", "t[2,2]")
        assert code == EXIT_OK
        assert parse_element(out.strip(), 2) == parse_element("(q - q^-1) * t[1,2] t[2,1]", 2)


class TestIdentityVerb:
    def test_verified(self, capsys):
        code, out, _ = run(
            capsys, "identity", "--n", "3", "--kind", "centrality",
            "--rows", "1,2", "--cols", "1,2", "--k", "1", "--l", "2",
        )
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["status"] == "verified"
        assert data["residual"] == "0"

    def test_not_applicable(self, capsys):
        code, out, _ = run(
            capsys, "identity", "--n", "3", "--kind", "centrality",
            "--rows", "1,2", "--cols", "1,2", "--k", "3", "--l", "3",
        )
        assert code == EXIT_PRECONDITION

    def test_gap_r_inferred(self, capsys):
        code, out, _ = run(
            capsys, "identity", "--n", "4", "--kind", "gap-r",
            "--rows", "1,2,4", "--cols", "1,2,4", "--k", "4", "--l", "3",
        )
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["convention"]["row_reading"] == "same-row"

    def test_membership_failure_exit(self, capsys):
        code, out, _ = run(
            capsys, "identity", "--n", "3", "--kind", "membership",
            "--rows", "1", "--cols", "1", "--k", "3", "--l", "3",
            "--element", "t[1,2]*t[2,1]",
        )
        assert code == EXIT_CHECK_FAILED


class TestSuiteVerb:
    def test_small_suite_exit_zero(self, capsys):
        code, out, _ = run(capsys, "suite", "--n", "2", "--format", "json")
        assert code == EXIT_OK
        data = json.loads(out)
        assert data["all_verified"] is True

    def test_text_summary(self, capsys):
        code, out, _ = run(capsys, "suite", "--n", "2", "--format", "text", "--no-membership")
        assert code == EXIT_OK
        assert "centrality" in out
        assert "convention" in out

    def test_reports_are_byte_identical(self, capsys):
        _, out1, _ = run(capsys, "suite", "--n", "2", "--format", "json")
        _, out2, _ = run(capsys, "suite", "--n", "2", "--format", "json")
        assert out1 == out2


class TestOreVerb:
    def test_witness_file(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        code, _, _ = run(
            capsys, "ore", "--n", "2", "--minor-rows", "2", "--minor-cols", "2",
            "--elem", "t[1,1]", "--side", "left", "--max-power", "5",
            "--out", str(path),
        )
        assert code == EXIT_OK
        data = json.loads(path.read_text())
        assert data["power"] == 2
        assert data["certified"] is True
        code2, out2, _ = run(capsys, "verify-witness", str(path))
        assert code2 == EXIT_OK

    def test_unsat_exit(self, capsys):
        code, _, err = run(
            capsys, "ore", "--n", "2", "--minor-rows", "2", "--minor-cols", "2",
            "--elem", "t[1,1]", "--side", "left", "--max-power", "1",
        )
        assert code == EXIT_UNSAT

    def test_tampered_witness_exit(self, capsys, tmp_path):
        path = tmp_path / "w.json"
        run(
            capsys, "ore", "--n", "2", "--minor-rows", "2", "--minor-cols", "2",
            "--elem", "t[1,1]", "--out", str(path),
        )
        data = json.loads(path.read_text())
        data["power"] = 1
        path.write_text(json.dumps(data))
        code, _, err = run(capsys, "verify-witness", str(path))
        assert code == EXIT_CHECK_FAILED

    def test_chain_output(self, capsys, tmp_path):
        path = tmp_path / "chain.json"
        code, _, _ = run(
            capsys, "ore", "--n", "3",
            "--minor-rows", "3", "--minor-cols", "3",
            "--minor-rows", "2,3", "--minor-cols", "2,3",
            "--elem", "t[1,1]", "--strategy", "constructive",
            "--out", str(path),
        )
        assert code == EXIT_OK
        data = json.loads(path.read_text())
        assert data["schema"] == "qmb-chain-witness-v1"
        assert data["certified"] is True

    def test_zero_element_rejected(self, capsys):
        code, _, err = run(
            capsys, "ore", "--n", "2", "--minor-rows", "2", "--minor-cols", "2",
            "--elem", "t[1,1] - t[1,1]",
        )
        assert code == EXIT_PRECONDITION

    def test_witness_output_is_byte_identical(self, capsys):
        argv = ["ore", "--n", "2", "--minor-rows", "2", "--minor-cols", "2",
                "--elem", "t[1,1]", "--strategy", "both"]
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2


class TestParserDetails:
    def test_implicit_multiplication(self):
        assert parse_element("t[1,1] t[2,2]", 2) == parse_element("t[1,1]*t[2,2]", 2)

    def test_powers(self):
        assert parse_element("t[1,1]^2", 2) == parse_element("t[1,1]*t[1,1]", 2)
        assert parse_element("q^-2 * 1", 2) == parse_element("q^-1 * q^-1", 2)

    def test_negative_exponent_only_on_q(self):
        with pytest.raises(Exception):
            parse_element("t[1,1]^-1", 2)

    def test_rational_constants(self):
        e = parse_element("1/2 * t[1,1]", 2)
        assert e == parse_element("t[1,1]", 2).scale(__import__("fractions").Fraction(1, 2))

    def test_division_by_q_rejected(self):
        with pytest.raises(Exception):
            parse_element("t[1,1] / q", 2)

    def test_unit_renders_and_parses(self):
        e = parse_element("q^-1 + q", 3)
        assert parse_element(e.render(), 3) == e

    def test_zero_round_trip(self):
        e = parse_element("0", 2)
        assert e.is_zero()
        assert e.render() == "0"

    def test_round_trip_across_operation_outputs(self):
        # elements produced by the library's operations parse back exactly
        import random

        from qmb.algebra import commutator, normal_form
        from qmb.minors import quantum_minor as qm
        from qmb.ore import LEFT, solve_witness
        from qmb.minors import MinorId
        from qmb.scalars import LaurentQ

        rng = random.Random(13)
        produced = [
            qm(3, (1, 2), (1, 3)),
            commutator(parse_element("t[1,1]", 3), parse_element("t[2,2]", 3)),
            solve_witness(2, MinorId((2,), (2,)), parse_element("t[1,1]", 2), LEFT).cofactor,
        ]
        for _ in range(25):
            n = rng.choice((2, 3))
            terms = [
                (LaurentQ({rng.randint(-2, 2): Fraction(rng.randint(-3, 3), rng.choice((1, 2)))}),
                 tuple((rng.randint(1, n), rng.randint(1, n)) for _ in range(rng.randint(0, 3))))
                for _ in range(2)
            ]
            produced.append(normal_form(n, terms))
        for e in produced:
            assert parse_element(e.render(), e.n) == e
