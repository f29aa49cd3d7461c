"""CLI tests: output formats, exit codes, file plumbing."""

import json

import pytest

from mlunify.cli import main
from conftest import NAT_SIG_TEXT

MODEL_TEXT = """\
carrier Nat = {n0}
one = {n0}
c = {n0}
g(n0) = {n0}
h(n0, n0) = {n0}
f(n0, n0, n0) = {n0}
"""

T1 = "f(x, g(one), g(z))"
T2 = "f(g(y), g(y), g(g(x)))"


@pytest.fixture
def sig_file(tmp_path):
    path = tmp_path / "sig.txt"
    path.write_text(NAT_SIG_TEXT)
    return str(path)


@pytest.fixture
def model_file(tmp_path):
    path = tmp_path / "model.txt"
    path.write_text(MODEL_TEXT)
    return str(path)


class TestUnifyCommand:
    def test_solved_output(self, sig_file, capsys):
        code = main(["unify", sig_file, T1, T2])
        out = capsys.readouterr().out
        assert code == 0
        assert out.splitlines()[0] == "MGU: {x -> g(one), y -> one, z -> g(g(one))}"

    def test_identical_terms(self, sig_file, capsys):
        code = main(["unify", sig_file, "g(one)", "g(one)"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "MGU: {}"

    def test_occurs_check_exit_2(self, sig_file, capsys):
        code = main(["unify", sig_file, "x", "g(x)"])
        out = capsys.readouterr().out
        assert code == 2
        assert out.startswith("FAIL: occurs-check")

    def test_trace_flag(self, sig_file, capsys):
        code = main(["unify", sig_file, T1, T2, "--trace"])
        out = capsys.readouterr().out
        assert code == 0
        trace = json.loads(out.split("\n", 1)[1])
        assert trace[0]["rule"] == "decomposition"

    def test_parse_error_exit_1(self, sig_file, capsys):
        code = main(["unify", sig_file, "nosuch(x)", "one"])
        assert code == 1
        assert "error:" in capsys.readouterr().err

    def test_missing_file_exit_1(self, capsys):
        code = main(["unify", "/nonexistent/sig", "one", "one"])
        assert code == 1


class TestCertifyAndCheckCommands:
    def test_pipeline(self, sig_file, tmp_path, capsys):
        prefix = str(tmp_path / "cert")
        code = main(
            ["certify", sig_file, T1, T2, "--stage", "both", "--out", prefix]
        )
        assert code == 0
        for stage in ("stage1", "stage2"):
            cert_path = f"{prefix}.{stage}.json"
            assert json.loads(open(cert_path).read())["lines"]
            assert main(["check", cert_path, sig_file]) == 0
            capsys.readouterr()

    def test_expand_pipeline(self, sig_file, tmp_path, capsys):
        prefix = str(tmp_path / "cert")
        code = main(
            ["certify", sig_file, T1, T2, "--stage", "1", "--expand", "--out", prefix]
        )
        assert code == 0
        assert main(["check", f"{prefix}.stage1.json", sig_file, "--no-derived"]) == 0

    def test_derived_rejected_without_flag(self, sig_file, tmp_path, capsys):
        prefix = str(tmp_path / "cert")
        main(["certify", sig_file, T1, T2, "--stage", "1", "--out", prefix])
        capsys.readouterr()
        code = main(["check", f"{prefix}.stage1.json", sig_file, "--no-derived"])
        report = json.loads(capsys.readouterr().out)
        assert code == 1
        assert report["ok"] is False
        assert report["failed_line"] == 2

    def test_not_unifiable_exit_2(self, sig_file, tmp_path):
        code = main(
            ["certify", sig_file, "one", "c", "--out", str(tmp_path / "c")]
        )
        assert code == 2


class TestEvalCommand:
    def test_satisfied(self, sig_file, model_file, capsys):
        code = main(["eval", sig_file, model_file, "g(one) = one"])
        assert code == 0
        assert capsys.readouterr().out.strip() == "SATISFIED"

    def test_not_satisfied_exit_2(self, sig_file, model_file, capsys):
        code = main(["eval", sig_file, model_file, "~g(one)"])
        assert code == 2
        assert capsys.readouterr().out.strip() == "NOT SATISFIED"

    def test_eval_set_with_valuation(self, sig_file, model_file, capsys):
        code = main(
            ["eval", sig_file, model_file, "g(x)", "--valuation", "x=n0"]
        )
        assert code == 0
        assert capsys.readouterr().out.strip() == "{n0}"

    def test_soundness_equivalences(self, sig_file, model_file, capsys):
        code = main(["eval", sig_file, model_file, "--soundness", T1, T2])
        assert code == 0
        assert capsys.readouterr().out.strip() == "EQUIVALENT"


class TestAxiomsCommand:
    def test_axioms_listing(self, sig_file, capsys):
        code = main(["axioms", sig_file])
        out = capsys.readouterr().out
        assert code == 0
        assert "# injectivity(g)" in out
        assert "# definedness" in out
