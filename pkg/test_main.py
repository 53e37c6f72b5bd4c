from unittest.mock import patch

import pytest

from constants import EXAMPLES
from exceptions import BasisSolveFailure, NumericalFailure
from main import build_parser, main
from storage import load_substitutions
from substitution import parse_substitution


def test_info(capsys):
    assert main(["info", "fibonacci"]) == 0
    output = capsys.readouterr().out
    assert "Substitution Matrix :" in output
    assert "  0 1\n  1 1" in output
    assert "Primitive: Yes" in output
    assert "Perron-Frobenius Eigenvalue : 1.62" in output
    assert "Letter Frequencies : 0.38, 0.62" in output


def test_info_not_primitive(capsys):
    assert main(["info", "ab.b"]) == 0
    output = capsys.readouterr().out
    assert "Primitive: No" in output
    assert "Tile Lengths" not in output


def test_words(capsys):
    assert main(["words", "b.ba", "-n", "2", "--list"]) == 0
    assert capsys.readouterr().out == "3\nab\nba\nbb\n"


def test_recog(capsys):
    assert main(["recog", "tribonacci"]) == 0
    output = capsys.readouterr().out
    assert "Fixed Letter : a" in output
    assert "Return Words : a, ab, ac" in output
    assert "Recognisable: Yes" in output


def test_complex(tmp_path, capsys):
    assert main(["complex", "fibonacci", "--type", "ap"]) == 0
    assert "\\begin{tikzpicture}" in capsys.readouterr().out
    path = tmp_path / "bd.tex"
    assert main(["complex", "fibonacci", "--type", "er", "--out", str(path)]) == 0
    assert "(bo)" in path.read_text(encoding="utf-8")


def test_strip(capsys):
    assert main(["strip", "thue-morse", "--count", "4"]) == 0
    assert capsys.readouterr().out.count("\\fill") == 4


def test_cohomology(capsys):
    assert main(["cohomology", "thue-morse", "--method", "bd"]) == 0
    output = capsys.readouterr().out
    assert "barge-diamond : lim M^T ⊕ Z^1" in output
    assert "Cohomology Rank : 2" in output

    assert main(["cohomology", "disconnected"]) == 0
    output = capsys.readouterr().out
    assert "barge-diamond : lim M^T / Z^1" in output
    assert "properisation : lim M_psi^T" in output
    assert "anderson-putnam : lim M_AP" in output
    assert output.count("Cohomology Rank : 3") == 3


def test_properise(capsys):
    assert main(["properise", "tribonacci"]) == 0
    output = capsys.readouterr().out
    assert "  a -> bc\n  b -> babc\n  c -> bbc" in output
    assert "Encoded : bc.babc.bbc" in output

    assert main(["properise", "tribonacci", "--stage", "pre"]) == 0
    assert "Encoded : b.bc.ba" in capsys.readouterr().out


def test_properise_repeat(capsys):
    assert main(["properise", "fibonacci", "--stage", "pre", "--repeat", "2"]) == 0
    output = capsys.readouterr().out
    assert "Round 1 :" in output
    assert "Round 2 :" in output
    assert main(["properise", "fibonacci", "--repeat", "0"]) == 2


def test_report(tmp_path):
    path = tmp_path / "fibonacci.tex"
    assert main(["report", "fibonacci", "--out", str(path), "--complexity", "4"]) == 0
    document = path.read_text(encoding="utf-8")
    assert "\\section*{fibonacci (b.ba)}" in document
    assert "Barge Diamond Cohomology Group : $\\varinjlim M^T$" in document


def test_batch(tmp_path, capsys):
    source = tmp_path / "substitutions.txt"
    source.write_text("fibonacci = b.ba\nbad = a..b\nnot primitive = ab.b\n", encoding="utf-8")
    out = tmp_path / "reports"
    assert main(["batch", "--in", str(source), "--out", str(out)]) == 0
    assert sorted(path.name for path in out.iterdir()) == ["fibonacci.tex", "not_primitive.tex"]
    output = capsys.readouterr().out
    assert "Wrote 2 reports" in output
    assert "Skipped line 2" in output


def test_save(tmp_path, capsys):
    path = tmp_path / "substitutions.txt"
    assert main(["save", "fibonacci", "ab.ba", "squared = ba.bab", "--out", str(path)]) == 0
    assert "Saved 3 substitutions" in capsys.readouterr().out
    entries, skipped_lines = load_substitutions(path)
    assert entries == [
        ("fibonacci", parse_substitution("b.ba")),
        ("ab.ba", parse_substitution("ab.ba")),
        ("squared", parse_substitution("ba.bab")),
    ]
    assert skipped_lines == []


def test_save_catalogue_then_batch(tmp_path):
    path = tmp_path / "catalogue.txt"
    assert main(["save", "--out", str(path)]) == 0
    entries, _ = load_substitutions(path)
    assert [name for name, _ in entries] == list(EXAMPLES)
    out = tmp_path / "reports"
    assert main(["batch", "--in", str(path), "--out", str(out)]) == 0
    assert len(list(out.iterdir())) == len(EXAMPLES)


def test_save_errors(tmp_path):
    path = tmp_path / "substitutions.txt"
    assert main(["save", "# comment = b.ba", "--out", str(path)]) == 2
    assert main(["save", "bad = a..b", "--out", str(path)]) == 2
    assert not path.exists()

def test_exit_codes():
    # Malformed input
    assert main(["info", "a..b"]) == 2
    assert main(["words", "b.ba", "-n", "0"]) == 2
    # Preconditions
    assert main(["words", "ab.b", "-n", "2"]) == 3
    assert main(["cohomology", "periodic"]) == 3
    # Missing save file
    assert main(["batch", "--in", "/nonexistent/substitutions.txt", "--out", "/tmp"]) == 2


@patch('main.eigenvalues')
def test_exit_code_numerical_failure(mocked_eigenvalues):
    mocked_eigenvalues.side_effect = NumericalFailure("no convergence")
    assert main(["info", "fibonacci"]) == 4


@patch('main.return_words')
def test_exit_code_internal_error(mocked_return_words):
    mocked_return_words.side_effect = BasisSolveFailure("bug")
    assert main(["recog", "fibonacci"]) == 1


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])
