"""
reports.py

Report plumbing shared by the command line: JSON documents, URL/stdin
inputs, the verification summary as HTML (jinja2) and as a workbook
(pandas + openpyxl).

Every document carries a "kind" and a "meta" block with the truncation
bounds that produced it, so a truncated answer always says how it was
truncated.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence
from zoneinfo import ZoneInfo

import pandas as pd
import requests
from jinja2 import Environment, select_autoescape

from registry import CheckResult, ExampleEntry

LOG = logging.getLogger(__name__)


# =========================
# Settings
# =========================
TZ = ZoneInfo(os.environ.get("CE_TZ", "UTC").strip() or "UTC")
HTTP_TIMEOUT = 60

KINDS = ("front", "dga", "surface", "model", "cohomology", "d2check", "hh0",
         "lagrangian", "surgery", "examples", "comparison")


class DocumentError(ValueError):
    pass


# =========================
# Documents
# =========================
def now_stamp() -> str:
    return datetime.now(TZ).isoformat(timespec="seconds")


def make_document(kind: str, payload: Dict[str, Any], truncation: Optional[Dict[str, Any]] = None,
                  **extra: Any) -> Dict[str, Any]:
    if kind not in KINDS:
        raise DocumentError(f"unknown document kind {kind!r}")
    doc: Dict[str, Any] = {"kind": kind, **payload, **extra}
    body = json.dumps(doc, sort_keys=True, ensure_ascii=False).encode("utf-8")
    doc["meta"] = {
        "generated_at": now_stamp(),
        "truncation": truncation or {},
        "sha256": hashlib.sha256(body).hexdigest(),
    }
    return doc


def dumps(doc: Dict[str, Any]) -> str:
    return json.dumps(doc, ensure_ascii=False, indent=2)


def write_json(path: Path, doc: Dict[str, Any]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps(doc), encoding="utf-8")


def fetch_text(url: str) -> str:
    r = requests.get(url, timeout=HTTP_TIMEOUT, headers={"Accept": "application/json"})
    r.raise_for_status()
    return r.text


def read_document(source: Optional[str], expect: Sequence[str] = ()) -> Dict[str, Any]:
    """
    Load a JSON document from a path, an http(s) URL or stdin ("-" or None).
    A document without "kind" is accepted when exactly one kind is expected.
    """
    try:
        if source in (None, "-"):
            if sys.stdin.isatty():
                raise DocumentError("no input: pipe a JSON document or pass a file")
            text = sys.stdin.read()
        elif source.startswith(("http://", "https://")):
            text = fetch_text(source)
        else:
            path = Path(source)
            if not path.is_file():
                raise DocumentError(f"no such file: {source}")
            text = path.read_text(encoding="utf-8")
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise DocumentError(f"input is not JSON: {e}") from e
    except requests.RequestException as e:
        raise DocumentError(f"could not fetch {source}: {e}") from e
    if not isinstance(doc, dict):
        raise DocumentError("input must be a JSON object")
    kind = doc.get("kind")
    if kind is None and len(expect) == 1:
        doc = {"kind": expect[0], **doc}
        kind = expect[0]
    if expect and kind not in expect:
        raise DocumentError(f"expected a {' or '.join(expect)} document, got {kind!r}")
    return doc


# =========================
# Verification summaries
# =========================
def results_frame(results: Sequence[CheckResult]) -> pd.DataFrame:
    rows = [
        {
            "example": r.name,
            "ok": r.ok,
            "seconds": round(r.seconds, 3),
            "discrepancies": len(r.discrepancies),
            "first_discrepancy": r.discrepancies[0] if r.discrepancies else "",
        }
        for r in results
    ]
    return pd.DataFrame(rows, columns=["example", "ok", "seconds", "discrepancies", "first_discrepancy"])


def expectations_frame(entries: Sequence[ExampleEntry]) -> pd.DataFrame:
    rows = [
        {"example": e.name, "key": x.key, "value": str(x.value), "provenance": x.provenance, "note": x.note}
        for e in entries
        for x in e.expectations
    ]
    return pd.DataFrame(rows, columns=["example", "key", "value", "provenance", "note"])


def write_workbook(path: Path, results: Sequence[CheckResult], entries: Sequence[ExampleEntry]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with pd.ExcelWriter(path, engine="openpyxl") as xw:
        results_frame(results).to_excel(xw, sheet_name="results", index=False)
        expectations_frame(entries).to_excel(xw, sheet_name="expectations", index=False)
    LOG.info("wrote %s", path)


REPORT_TEMPLATE = """<!doctype html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>{{ title }}</title>
<style>
  body { font-family: system-ui, sans-serif; margin: 24px; color: #0f172a; }
  table { border-collapse: collapse; width: 100%; }
  th, td { border-bottom: 1px solid #e2e8f0; padding: 6px 10px; text-align: left; vertical-align: top; }
  th { background: #f1f5f9; }
  .pill { border-radius: 999px; padding: 2px 10px; font-weight: 700; }
  .ok { background: #dcfce7; color: #166534; }
  .fail { background: #fee2e2; color: #991b1b; }
  .muted { color: #64748b; }
</style>
</head>
<body>
<h1>{{ title }}</h1>
<div class="muted">Generated {{ generated_at }} · {{ passed }}/{{ results|length }} passed · truncation {{ truncation }}</div>
<table>
  <thead><tr><th>Example</th><th>Status</th><th>Seconds</th><th>Expectations</th><th>Discrepancies</th></tr></thead>
  <tbody>
  {% for r in results %}
    <tr>
      <td><b>{{ r.name }}</b><div class="muted">{{ descriptions.get(r.name, "") }}</div></td>
      <td><span class="pill {{ 'ok' if r.ok else 'fail' }}">{{ 'PASS' if r.ok else 'FAIL' }}</span></td>
      <td>{{ '%.3f'|format(r.seconds) }}</td>
      <td>
        {% for x in expectations.get(r.name, []) %}
          <div>{{ x.key }} = {{ x.value }} <span class="muted">({{ x.provenance }})</span></div>
        {% endfor %}
      </td>
      <td>{% for d in r.discrepancies %}<div>{{ d }}</div>{% endfor %}</td>
    </tr>
  {% endfor %}
  </tbody>
</table>
</body>
</html>
"""


def render_html(results: Sequence[CheckResult], entries: Sequence[ExampleEntry],
                truncation: Dict[str, Any], title: str = "CE example verification") -> str:
    env = Environment(autoescape=select_autoescape(default=True, default_for_string=True))
    tpl = env.from_string(REPORT_TEMPLATE)
    return tpl.render(
        title=title,
        generated_at=now_stamp(),
        results=list(results),
        passed=sum(1 for r in results if r.ok),
        truncation=", ".join(f"{k}={v}" for k, v in truncation.items()),
        descriptions={e.name: e.description for e in entries},
        expectations={e.name: list(e.expectations) for e in entries},
    )


def write_report(path: Path, results: Sequence[CheckResult], entries: Sequence[ExampleEntry],
                 truncation: Dict[str, Any]) -> None:
    """Format follows the suffix: .html, .xlsx or .json."""
    suffix = path.suffix.lower()
    if suffix in (".html", ".htm"):
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(render_html(results, entries, truncation), encoding="utf-8")
    elif suffix == ".xlsx":
        write_workbook(path, results, entries)
    elif suffix == ".json":
        write_json(path, make_document("examples", {"results": [r.as_dict() for r in results]}, truncation))
    else:
        raise DocumentError(f"unsupported report format {suffix or path.name!r}; use .html, .xlsx or .json")


def summary_lines(results: Sequence[CheckResult]) -> List[str]:
    lines = []
    for r in results:
        mark = "✅" if r.ok else "❌"
        lines.append(f"{mark} {r.name} ({r.seconds:.2f}s)")
        if r.discrepancies:
            lines.append(f"   ⚠️  {r.discrepancies[0]}")
    return lines
