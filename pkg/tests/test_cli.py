import json

import pytest

from boundary_algebra import MarkedSurface, surface_to_json
from ce_tool import EXIT_BAD_INPUT, EXIT_OK, run


@pytest.fixture(autouse=True)
def no_seed(monkeypatch) -> None:
    monkeypatch.delenv("CE_SEED", raising=False)


def stage(tmp_path, name: str, argv) -> str:
    out = str(tmp_path / f"{name}.json")
    assert run(list(argv) + ["-o", out]) == EXIT_OK
    return out


def test_build_writes_a_front_document(tmp_path) -> None:
    path = stage(tmp_path, "front", ["build", "theta", "3"])
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    assert doc["kind"] == "front"
    assert doc["front"]["name"] == "theta_3"
    assert len(doc["meta"]["sha256"]) == 64


def test_build_prints_json_without_output_file(capsys) -> None:
    assert run(["build", "unknot"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["kind"] == "front"


def test_stopped_a3_pipeline_squares_to_zero(tmp_path) -> None:
    front = stage(tmp_path, "front", ["build", "a_n", "3"])
    dga = stage(tmp_path, "dga", ["ce", "--stopped", "-i", front])
    assert run(["d2check", "-i", dga]) == EXIT_OK


def test_cohomology_of_stopped_a3(tmp_path, capsys) -> None:
    front = stage(tmp_path, "front", ["build", "a_n", "3"])
    capsys.readouterr()
    assert run(["cohomology", "--stopped", "--json", "--degrees=-1..2", "-i", front]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert {d: n for d, n in doc["dims"].items() if n} == {"0": 3, "1": 2}
    assert "max_weight" in doc["meta"]["truncation"]["policy"]


def test_closed_form_and_transfer_agree_on_stopped_theta(tmp_path) -> None:
    front = stage(tmp_path, "front", ["build", "theta", "3"])
    dga = stage(tmp_path, "dga", ["ce", "--stopped", "-i", front])
    assert run(["minimal-model", "--both", "-i", dga]) == EXIT_OK


def test_remove_exact_on_theta_prime(tmp_path) -> None:
    front = stage(tmp_path, "front", ["build", "theta_prime", "2"])
    dga = stage(tmp_path, "dga", ["ce", "-i", front])
    reduced = stage(tmp_path, "reduced", ["remove-exact", "b1", "-i", dga])
    with open(reduced, encoding="utf-8") as fh:
        doc = json.load(fh)
    assert "Pi" not in doc["dga"]["vertices"]


def test_internal_algebra_of_a_surface(tmp_path) -> None:
    src = tmp_path / "surface.json"
    src.write_text(json.dumps({"kind": "surface", "surface": surface_to_json(MarkedSurface.disk_with_stops(2))}))
    out = stage(tmp_path, "internal", ["internal", str(src), "--winding", "0"])
    with open(out, encoding="utf-8") as fh:
        doc = json.load(fh)
    assert doc["kind"] == "dga"
    assert len(doc["dga"]["generators"]) == 1


def test_disk_certificates_carry_their_faces(tmp_path) -> None:
    front = stage(tmp_path, "front", ["build", "pinched-eight"])
    disks = tmp_path / "disks.json"
    stage(tmp_path, "dga", ["ce", "--emit-disks", str(disks), "-i", front])
    doc = json.loads(disks.read_text(encoding="utf-8"))
    assert doc["kind"] == "lagrangian"
    area = {f["id"]: f["area"] for f in doc["diagram"]["planar_map"]["faces"]}
    rows = [row for gid in ("b1", "c", "d") for row in doc["disks"][gid]]
    assert len(rows) == 4
    for row in rows:
        assert sum(area[f] * k for f, k in row["faces"].items()) == row["area"]


def test_bad_input_exits_with_two(tmp_path) -> None:
    assert run(["build", "nope"]) == EXIT_BAD_INPUT
    assert run(["frobnicate"]) == EXIT_BAD_INPUT
    assert run(["ce", "-i", str(tmp_path / "missing.json")]) == EXIT_BAD_INPUT
    assert run(["cohomology", "--degrees=3..1"]) == EXIT_BAD_INPUT


def test_example_verify_and_report(tmp_path) -> None:
    assert run(["example", "pinched-figure-eight", "--verify"]) == EXIT_OK
    report = tmp_path / "out" / "report.html"
    assert run(["example", "unknot", "--verify", "--report", str(report)]) == EXIT_OK
    html = report.read_text(encoding="utf-8")
    assert "unknot" in html
    assert "PASS" in html


def test_example_listing(capsys) -> None:
    assert run(["example", "--list"]) == EXIT_OK
    assert "pinched-figure-eight" in capsys.readouterr().out
    assert run(["example", "nope"]) == EXIT_BAD_INPUT


def test_bad_seed_is_bad_input(monkeypatch) -> None:
    monkeypatch.setenv("CE_SEED", "abc")
    assert run(["example", "unknot", "--verify"]) == EXIT_BAD_INPUT
