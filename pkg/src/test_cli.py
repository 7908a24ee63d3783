"""
Tests for the command-line front end: output, global flags and exit codes.

Feature: cli
"""

import json

import pytest

from main import EXIT_GUARD, EXIT_OK, EXIT_PARSE, run
from src.formatters import parse_json
from src.estimators import k_statistic
from src.symexpr import N, SymExpr, falling, moment

K3_TEXT = "(n^2*S[3] - 3*n*S[1]*S[2] + 2*S[1]^3) / (n*(n-1)*(n-2))"


def m(*v):
    return SymExpr.from_atom(moment(v))


def output(capsys, argv):
    code = run(argv)
    return code, capsys.readouterr().out.strip()


class TestCommands:
    """One invocation per command."""

    def test_kstat(self, capsys):
        assert output(capsys, ["kstat", "3"]) == (EXIT_OK, K3_TEXT)

    def test_global_flags_before_or_after_command(self, capsys):
        _, before = output(capsys, ["--format", "latex", "kstat", "2"])
        _, after = output(capsys, ["kstat", "2", "--format", "latex"])
        assert before == after
        assert before.startswith(r"\frac{")

    def test_json_output_parses_back(self, capsys):
        code, out = output(capsys, ["kstat", "4", "--format", "json"])
        assert code == EXIT_OK
        assert json.loads(out)["command"] == "kstat"
        assert parse_json(out) == k_statistic(4)

    def test_polykay_and_mkstat(self, capsys):
        assert output(capsys, ["polykay", "1", "1"]) == (EXIT_OK, "(-S[2] + S[1]^2) / (n*(n-1))")
        assert output(capsys, ["mkstat", "1,0;0,1"]) == (EXIT_OK, "(n*S[1,1] - S[0,1]*S[1,0]) / (n*(n-1))")
        code, _ = output(capsys, ["mpolykay", "1,0", "0,1"])
        assert code == EXIT_OK

    def test_ustat(self, capsys):
        assert output(capsys, ["ustat", "2,1"]) == (EXIT_OK, "AUG[{1},{2}]/(n)_2")
        assert output(capsys, ["ustat", "2,1", "--expand-factorials"]) == (EXIT_OK, "AUG[{1},{2}]/(n*(n-1))")
        assert output(capsys, ["ustat", "2,1", "--ps"]) == (EXIT_OK, "(-S[3] + S[1]*S[2]) / (n*(n-1))")

    def test_moment_cumulant_relations(self, capsys):
        assert output(capsys, ["cumulant", "2"]) == (EXIT_OK, "m[2] - m[1]^2")
        assert output(capsys, ["cumulant", "3"]) == (EXIT_OK, "m[3] - 3*m[1]*m[2] + 2*m[1]^3")
        assert output(capsys, ["moments", "2"]) == (EXIT_OK, "k[2] + k[1]^2")
        assert output(capsys, ["cumulant", "1,0;0,1", "--vectors"]) == (EXIT_OK, "m[1,1] - m[0,1]*m[1,0]")

    def test_conversions(self, capsys):
        assert output(capsys, ["augtops", "1;1"]) == (EXIT_OK, "-S[2] + S[1]^2")
        assert output(capsys, ["augprod", "1", "1"]) == (EXIT_OK, "AUG[{1},{1}] + AUG[{2}]")

    def test_pstoaug_expectation(self, capsys):
        code, out = output(capsys, ["--format", "json", "pstoaug", "1,0;1,0;0,1", "--expect"])
        assert code == EXIT_OK
        n, ff2, ff3 = SymExpr.from_atom(N), SymExpr.from_atom(falling(2)), SymExpr.from_atom(falling(3))
        assert parse_json(out) == (
            n * m(2, 1)
            + 2 * ff2 * m(1, 0) * m(1, 1)
            + ff2 * m(2, 0) * m(0, 1)
            + ff3 * m(1, 0) ** 2 * m(0, 1)
        )

    def test_subdivisions(self, capsys):
        code, out = output(capsys, ["subdivisions", "a,a,b", "--check"])
        assert code == EXIT_OK
        assert "set-partition check: ok" in out
        code, out = output(capsys, ["subdivisions", "a^3,g^2", "--format", "json"])
        data = json.loads(out)["result"]
        assert len(data["subdivisions"]) == 16
        assert data["total"] == 52


class TestVerify:
    """Oracle cross-checks from the command line."""

    def test_kstat(self, capsys):
        assert output(capsys, ["verify", "kstat", "3"]) == (EXIT_OK, "n=3: ok\nn=4: ok\nn=5: ok")

    def test_explicit_sample_sizes(self, capsys):
        assert output(capsys, ["verify", "polykay", "2", "1", "--n", "4"]) == (EXIT_OK, "n=4: ok")

    @pytest.mark.parametrize("argv", [
        ["verify", "mkstat", "1,0;0,1"],
        ["verify", "mkstat", "1,0;1,0;0,1"],
        ["verify", "mpolykay", "1,0;1,0", "0,1"],
        ["verify", "kstat", "4"],
        ["verify", "ustat", "2,1"],
        ["verify", "ustat", "1,0;0,1", "--vectors"],
        ["verify", "augtops", "2,0;1,1"],
        ["verify", "pstoaug", "1,0;0,1;1,1"],
        ["verify", "augprod", "2,0;1,0", "1,1"],
    ])
    def test_targets(self, capsys, argv):
        code, out = output(capsys, argv)
        assert code == EXIT_OK
        assert "MISMATCH" not in out

    def test_json_report(self, capsys):
        code, out = output(capsys, ["verify", "kstat", "2", "--format", "json"])
        data = json.loads(out)["result"]
        assert data["ok"] is True
        assert [c["n"] for c in data["checks"]] == [2, 3, 4]


class TestExitCodes:
    """Errors map to exit codes instead of tracebacks."""

    @pytest.mark.parametrize("argv", [
        ["kstat", "three"],
        ["augtops", "1,x"],
        ["subdivisions", "a,,b"],
        ["cumulant", "1,2"],
        ["mpolykay", "1,0", "1"],
        ["nonsense"],
    ])
    def test_input_errors(self, capsys, argv):
        assert run(argv) == EXIT_PARSE

    @pytest.mark.parametrize("argv", [
        ["kstat", "25"],
        ["kstat", "6", "--max-order", "5"],
        ["verify", "kstat", "9"],
        ["verify", "kstat", "3", "--n", "9"],
    ])
    def test_guard_violations(self, capsys, argv):
        assert run(argv) == EXIT_GUARD
        assert "error:" in capsys.readouterr().err
