"""Command-line interface: exit codes, output formats, golden reports."""

import json
import pathlib

import pytest

from conftest import CORPUS, gen_airy
from specrig.cli import main
from specrig.report import parse_report, render_text, serialize


GOLDEN = pathlib.Path(__file__).parent / "golden"


def write_problem(tmp_path, text, name="problem.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


class TestExitCodes:
    def test_success(self, tmp_path, capsys):
        assert main(["analyze", write_problem(tmp_path, CORPUS["airy"])]) == 0
        out = capsys.readouterr()
        assert out.err == ""

    def test_missing_file(self, capsys):
        assert main(["analyze", "/nonexistent/problem.txt"]) == 2
        assert "error" in capsys.readouterr().err

    def test_parse_error(self, tmp_path, capsys):
        path = write_problem(tmp_path, "poles 0\nmatrix\nz^(1/2)\nend\n")
        assert main(["analyze", path]) == 2
        err = capsys.readouterr().err
        assert "non-integer exponent" in err

    def test_assumption_violation(self, tmp_path, capsys):
        path = write_problem(tmp_path, CORPUS_BESSEL)
        assert main(["analyze", path]) == 2
        out = capsys.readouterr()
        assert "assumption violation at pole 0" in out.err
        assert out.out == ""  # no invariants emitted


CORPUS_BESSEL = "poles 0, inf\nmatrix\n0, 1\n1/z, 0\nend\n"


class TestOutput:
    def test_json_document(self, tmp_path, capsys):
        main(["analyze", write_problem(tmp_path, CORPUS["airy"])])
        doc = json.loads(capsys.readouterr().out)
        assert doc["schema_version"] == "1"
        assert doc["global"]["rig"] == 2
        assert doc["poles"][0]["mu"] == doc["poles"][0]["mu_oracle"]

    def test_text_table(self, tmp_path, capsys):
        main(["analyze", write_problem(tmp_path, CORPUS["airy"]), "--text"])
        out = capsys.readouterr().out
        assert "Irr(End)" in out
        assert "main theorem: true" in out

    def test_determinism(self, tmp_path, capsys):
        path = write_problem(tmp_path, CORPUS["fuchsian"])
        main(["analyze", path])
        first = capsys.readouterr().out
        main(["analyze", path])
        second = capsys.readouterr().out
        assert first == second

    def test_report_round_trip(self, tmp_path, capsys):
        main(["analyze", write_problem(tmp_path, CORPUS["airy"])])
        out = capsys.readouterr().out
        doc = parse_report(out)
        assert serialize(doc) == out
        render_text(doc)  # renders without error

    def test_truncation_override(self, tmp_path, capsys):
        path = write_problem(tmp_path, CORPUS["airy"])
        code = main(["analyze", path, "--truncation", "40"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["global"]["rig"] == 2

    def test_cohomology_flag(self, tmp_path, capsys):
        path = write_problem(tmp_path, CORPUS["airy"])
        main(["analyze", path, "--assert-irreducible-connection"])
        doc = json.loads(capsys.readouterr().out)
        assert doc["global"]["h_dims"] == [1, 0, 1]

    def test_check_reduction_flag(self, tmp_path, capsys):
        path = write_problem(tmp_path, CORPUS["airy"])
        assert main(["analyze", path, "--check-reduction"]) == 0


GOLDEN_CASES = {
    "airy": CORPUS["airy"],
    "gen_airy_3": gen_airy(3),
    "gen_airy_5": gen_airy(5),
    "fuchsian": CORPUS["fuchsian"],
    "rank1_irregular": CORPUS["rank1_irregular"],
    "rank1_regular": CORPUS["rank1_regular"],
}


@pytest.mark.parametrize("name", sorted(GOLDEN_CASES))
def test_golden_reports(name, tmp_path, capsys):
    path = write_problem(tmp_path, GOLDEN_CASES[name])
    assert main(["analyze", path]) == 0
    out = capsys.readouterr().out
    expected = (GOLDEN / f"{name}.json").read_text()
    assert out == expected
