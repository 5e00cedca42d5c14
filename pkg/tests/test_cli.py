import json
from pathlib import Path

import jsonschema
import pytest

from authorfield.cli import evaluate_corpus, main
from authorfield.extractor import ExtractConfig

CORPUS = Path(__file__).resolve().parents[1] / "corpus"

RESULT_SCHEMA = {
    "type": "object",
    "required": ["authors", "variant", "warnings"],
    "properties": {
        "authors": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["given", "initials", "surname", "raw", "span"],
                "properties": {
                    "given": {"type": "array", "items": {"type": "string"}},
                    "initials": {"type": "array", "items": {"type": "string"}},
                    "surname": {"type": "string"},
                    "raw": {"type": "string"},
                    "span": {
                        "type": "object",
                        "required": ["start", "end"],
                        "properties": {
                            "start": {"type": "integer", "minimum": 0},
                            "end": {"type": "integer", "minimum": 0},
                        },
                    },
                },
            },
        },
        "variant": {"enum": ["lower", "upper"]},
        "warnings": {"type": "array", "items": {"type": "string"}},
    },
}


@pytest.fixture
def newton(tmp_path):
    page = tmp_path / "newton.txt"
    page.write_text(
        "Philosophiæ Naturalis Principia Mathematica\nIsaac Newton\n", encoding="utf-8"
    )
    return page


# --- extract -----------------------------------------------------------------


def test_extract_json_single_file(newton, capsys):
    assert main(["extract", str(newton), "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    jsonschema.validate(payload, RESULT_SCHEMA)
    assert [a["surname"] for a in payload["authors"]] == ["Newton"]
    assert payload["authors"][0]["given"] == ["Isaac"]
    assert payload["authors"][0]["raw"] == "Isaac Newton"


def test_extract_empty_file_is_success(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("", encoding="utf-8")
    assert main(["extract", str(empty)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["authors"] == []


def test_extract_tsv_format(newton, capsys):
    assert main(["extract", str(newton), "--format", "tsv"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "given\tinitials\tsurname\traw"
    assert lines[1] == "Isaac\t\tNewton\tIsaac Newton"


def test_extract_multiple_files_emit_json_lines(newton, tmp_path, capsys):
    other = tmp_path / "other.txt"
    other.write_text("Some Title of Things\nAda Smith\n", encoding="utf-8")
    assert main(["extract", str(newton), str(other)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    first, second = (json.loads(line) for line in lines)
    assert first["path"] == str(newton)
    assert second["path"] == str(other)
    assert [a["surname"] for a in second["authors"]] == ["Smith"]


def test_extract_unreadable_file_records_error(newton, tmp_path, capsys):
    missing = tmp_path / "missing.txt"
    assert main(["extract", str(missing)]) == 2
    out = capsys.readouterr()
    payload = json.loads(out.out)
    assert payload["path"] == str(missing)
    assert "error" in payload
    # one good input keeps the exit status at zero
    assert main(["extract", str(missing), str(newton)]) == 0


def test_extract_output_is_deterministic(newton, capsys):
    main(["extract", str(newton)])
    first = capsys.readouterr().out
    main(["extract", str(newton)])
    assert capsys.readouterr().out == first


def test_extract_variant_flag(tmp_path, capsys):
    page = tmp_path / "mixed.txt"
    page.write_text("Isaac Newton\n\nPierre MARTIN, Claude DUBOIS\n", encoding="utf-8")
    main(["extract", str(page), "--variant", "lower"])
    lower = json.loads(capsys.readouterr().out)
    assert [a["surname"] for a in lower["authors"]] == ["Newton"]
    main(["extract", str(page), "--variant", "both"])
    both = json.loads(capsys.readouterr().out)
    assert [a["surname"] for a in both["authors"]] == ["Martin", "Dubois"]


def test_extract_lexicon_override_flags(tmp_path, capsys):
    page = tmp_path / "page.txt"
    page.write_text("Watson Pike\n", encoding="utf-8")
    prefixes = tmp_path / "prefixes.txt"
    prefixes.write_text("watson\n", encoding="utf-8")
    main(["extract", str(page)])
    default = json.loads(capsys.readouterr().out)
    assert [a["surname"] for a in default["authors"]] == ["Pike"]
    main(["extract", str(page), "--prefixes", str(prefixes)])
    overridden = json.loads(capsys.readouterr().out)
    assert overridden["authors"] == []


def test_extract_missing_lexicon_override_fails_cleanly(newton, capsys):
    assert main(["extract", str(newton), "--prefixes", "/no/such/file.txt"]) == 1
    assert "error" in capsys.readouterr().err


# --- encode ------------------------------------------------------------------


def test_encode_worked_example(newton, capsys):
    assert main(["encode", str(newton)]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "LnnnnLnnL"


def test_encode_empty_file(tmp_path, capsys):
    empty = tmp_path / "empty.txt"
    empty.write_text("", encoding="utf-8")
    assert main(["encode", str(empty)]) == 0
    assert capsys.readouterr().out.strip() == "L"


def test_encode_unreadable_file_fails(tmp_path, capsys):
    assert main(["encode", str(tmp_path / "nope.txt")]) == 1


def test_encode_spans_table(newton, capsys):
    assert main(["encode", str(newton), "--spans"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[1] == "idx\tcode\tstart\tend\ttext"
    rows = [line.split("\t") for line in lines[2:]]
    assert len(rows) == len("LnnnnLnnL")
    text = newton.read_text(encoding="utf-8")
    for idx, code, start, end, slice_text in rows:
        if code in "nN":
            assert text[int(start) : int(end)] == slice_text


# --- build-lexicon -----------------------------------------------------------


def test_build_lexicon_writes_prefixes(tmp_path, capsys):
    names = tmp_path / "names.txt"
    names.write_text("newton\n", encoding="utf-8")
    freqs = tmp_path / "freqs.txt"
    freqs.write_text("nonlinear\t10\n", encoding="utf-8")
    out = tmp_path / "lexicon.txt"
    assert main(["build-lexicon", str(names), str(freqs), "--top-k", "50", "-o", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == "no\n"


def test_build_lexicon_empty_frequency_file(tmp_path, capsys):
    names = tmp_path / "names.txt"
    names.write_text("newton\n", encoding="utf-8")
    freqs = tmp_path / "freqs.txt"
    freqs.write_text("", encoding="utf-8")
    assert main(["build-lexicon", str(names), str(freqs)]) == 0
    assert capsys.readouterr().out == ""


def test_build_lexicon_tie_break(tmp_path, capsys):
    names = tmp_path / "names.txt"
    names.write_text("", encoding="utf-8")
    freqs = tmp_path / "freqs.txt"
    freqs.write_text("beta\t5\nalpha\t5\n", encoding="utf-8")
    assert main(["build-lexicon", str(names), str(freqs), "--top-k", "1"]) == 0
    assert capsys.readouterr().out == "a\n"


def test_build_lexicon_malformed_line_reports_number(tmp_path, capsys):
    names = tmp_path / "names.txt"
    names.write_text("newton\n", encoding="utf-8")
    freqs = tmp_path / "freqs.txt"
    freqs.write_text("good\t1\nbad line\n", encoding="utf-8")
    assert main(["build-lexicon", str(names), str(freqs)]) == 1
    assert "line 2" in capsys.readouterr().err


# --- evaluate ----------------------------------------------------------------


def test_evaluate_bundled_corpus_passes(capsys):
    assert main(["evaluate", str(CORPUS)]) == 0
    out = capsys.readouterr().out
    assert "exact-match rate: 1.000" in out
    assert "failed: 0" in out


def test_evaluate_empty_corpus_fails(tmp_path, capsys):
    assert main(["evaluate", str(tmp_path)]) == 1
    assert "no corpus cases" in capsys.readouterr().err


def test_evaluate_detects_failing_case(tmp_path, capsys):
    (tmp_path / "bad.txt").write_text("Simple Title of Work\nAda Smith\n", encoding="utf-8")
    (tmp_path / "bad.json").write_text(
        json.dumps({"authors": [{"given": ["Bo"], "initials": [], "surname": "Wrong"}]}),
        encoding="utf-8",
    )
    assert main(["evaluate", str(tmp_path)]) == 1
    report = evaluate_corpus(tmp_path, ExtractConfig())
    assert report.exact_match_rate < 1.0


def test_evaluate_missing_expectation_marks_invalid(tmp_path, capsys):
    (tmp_path / "orphan.txt").write_text("Ada Smith\n", encoding="utf-8")
    assert main(["evaluate", str(tmp_path)]) == 1
    assert "INVALID" in capsys.readouterr().out


def test_evaluate_rejects_unknown_tags(tmp_path):
    (tmp_path / "tagged.txt").write_text("Ada Smith\n", encoding="utf-8")
    (tmp_path / "tagged.json").write_text(
        json.dumps({"authors": [], "tags": ["lower:bogus"]}), encoding="utf-8"
    )
    report = evaluate_corpus(tmp_path, ExtractConfig())
    assert report.cases[0].invalid


def test_evaluate_precision_recall_aggregation(tmp_path):
    (tmp_path / "half.txt").write_text("Some Title of Work\nAda Smith and Ben Jones\n", encoding="utf-8")
    (tmp_path / "half.json").write_text(
        json.dumps(
            {
                "authors": [
                    {"given": ["Ada"], "initials": [], "surname": "Smith"},
                    {"given": ["Cara"], "initials": [], "surname": "White"},
                ]
            }
        ),
        encoding="utf-8",
    )
    report = evaluate_corpus(tmp_path, ExtractConfig())
    assert report.precision == pytest.approx(0.5)
    assert report.recall == pytest.approx(0.5)
    assert report.exact_match_rate == 0.0
