import pytest

from constants import EXAMPLES
from exceptions import IllegalCharacter, SaveFileError
from storage import encode, format_save_file, load_substitutions, parse_save_file, resolve, save_substitutions
from substitution import parse_substitution


def test_encode():
    assert encode(parse_substitution("b.ba")) == "b.ba"
    assert encode(parse_substitution(EXAMPLES["hexibonacci"])) == "ab.ac.ad.ae.af.a"
    assert encode(parse_substitution("a")) == "a"


def test_encode_round_trip_catalogue():
    for encoded in EXAMPLES.values():
        assert encode(parse_substitution(encoded)) == encoded


def test_resolve():
    name, substitution = resolve("fibonacci")
    assert name == "fibonacci"
    assert encode(substitution) == "b.ba"
    name, substitution = resolve(" Thue-Morse ")
    assert name == "thue-morse"
    name, substitution = resolve("ab.ac.a")
    assert name is None
    assert substitution.alphabet_size == 3
    with pytest.raises(IllegalCharacter):
        resolve("not a substitution")


def test_parse_save_file():
    text = "\n".join([
        "# worked examples",
        "fibonacci = b.ba",
        "",
        "tribonacci=ab.ac.a",
        "missing separator",
        "fibonacci = ab.ba",
        "broken = ab..ba",
        " = ab.ba",
        "thue morse = ab.ba",
    ])
    entries, skipped_lines = parse_save_file(text)
    assert [(name, encode(substitution)) for name, substitution in entries] == [
        ("fibonacci", "b.ba"),
        ("tribonacci", "ab.ac.a"),
        ("thue morse", "ab.ba"),
    ]
    assert [number for number, _ in skipped_lines] == [5, 6, 7, 8]
    assert "duplicate name fibonacci" in skipped_lines[1][1]


def test_save_and_load(tmp_path):
    path = tmp_path / "substitutions.txt"
    entries = [("fibonacci", parse_substitution("b.ba")), ("disconnected", parse_substitution(EXAMPLES["disconnected"]))]
    save_substitutions(path, entries)
    assert path.read_text(encoding="utf-8") == "fibonacci = b.ba\ndisconnected = abcda.ab.cdbc.db\n"
    loaded, skipped_lines = load_substitutions(path)
    assert loaded == entries
    assert skipped_lines == []


def test_load_missing_file(tmp_path):
    with pytest.raises(SaveFileError):
        load_substitutions(tmp_path / "missing.txt")


def test_format_save_file_rejects_bad_names():
    substitution = parse_substitution("b.ba")
    for name in ["", "a = b", "#comment", "two\nlines"]:
        with pytest.raises(SaveFileError):
            format_save_file([(name, substitution)])
