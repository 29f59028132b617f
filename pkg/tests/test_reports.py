import io
import json

import pytest
import requests
from openpyxl import load_workbook

import reports
from registry import REGISTRY, CheckResult
from reports import DocumentError, make_document, read_document, render_html, summary_lines, write_report


def results():
    return [
        CheckResult("unknot", True, [], {}, 0.1),
        CheckResult("theta-2", False, ["d(x) = <b>0</b>, expected e[1]"], {}, 0.25),
    ]


def test_documents_carry_meta() -> None:
    doc = make_document("front", {"front": {}}, {"max_length": 8})
    assert doc["meta"]["truncation"] == {"max_length": 8}
    assert len(doc["meta"]["sha256"]) == 64
    with pytest.raises(DocumentError):
        make_document("roster", {})


def test_read_document_from_file(tmp_path) -> None:
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"components": []}), encoding="utf-8")
    assert read_document(str(path), expect=("surface",))["kind"] == "surface"
    with pytest.raises(DocumentError):
        read_document(str(path), expect=("surface", "dga"))
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(DocumentError):
        read_document(str(path))
    path.write_text("{oops", encoding="utf-8")
    with pytest.raises(DocumentError):
        read_document(str(path))
    with pytest.raises(DocumentError):
        read_document(str(tmp_path / "missing.json"))


def test_read_document_from_stdin(monkeypatch) -> None:
    monkeypatch.setattr("sys.stdin", io.StringIO('{"kind": "dga", "dga": {}}'))
    assert read_document(None, expect=("dga",))["kind"] == "dga"


def test_read_document_from_url(monkeypatch) -> None:
    class Response:
        text = '{"kind": "front", "front": {}}'

        def raise_for_status(self) -> None:
            pass

    seen = {}

    def fake_get(url, timeout=None, headers=None):
        seen["timeout"] = timeout
        return Response()

    monkeypatch.setattr(reports.requests, "get", fake_get)
    assert read_document("https://example.org/f.json", expect=("front",))["kind"] == "front"
    assert seen["timeout"] == reports.HTTP_TIMEOUT

    def broken_get(url, timeout=None, headers=None):
        raise requests.ConnectionError("down")

    monkeypatch.setattr(reports.requests, "get", broken_get)
    with pytest.raises(DocumentError):
        read_document("https://example.org/f.json")


def test_workbook_report(tmp_path) -> None:
    path = tmp_path / "report.xlsx"
    write_report(path, results(), [REGISTRY["unknot"]], {"max_length": 8})
    wb = load_workbook(path)
    assert wb.sheetnames == ["results", "expectations"]
    assert wb["results"]["A2"].value == "unknot"
    assert wb["expectations"]["A2"].value == "unknot"


def test_html_report_escapes_discrepancies() -> None:
    html = render_html(results(), [REGISTRY["unknot"]], {"max_length": 8})
    assert "1/2 passed" in html
    assert "&lt;b&gt;0&lt;/b&gt;" in html
    assert "FAIL" in html


def test_unknown_report_format(tmp_path) -> None:
    with pytest.raises(DocumentError):
        write_report(tmp_path / "report.txt", results(), [], {})


def test_summary_lines() -> None:
    lines = summary_lines(results())
    assert lines[0] == "✅ unknot (0.10s)"
    assert lines[1].startswith("❌ theta-2")
    assert lines[2].strip().startswith("⚠️")
