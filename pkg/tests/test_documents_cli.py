import json
import shutil

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from kreinlab import cli
from kreinlab import documents as docs
from kreinlab.errors import InputError


@pytest.fixture
def work(tmp_path, fixtures_dir):
    for f in fixtures_dir.glob("*.json"):
        shutil.copy(f, tmp_path / f.name)
    return tmp_path


def run(work, *argv):
    out = work / "report.json"
    code = cli.run(list(argv) + ["--report", str(out)])
    report = json.loads(out.read_text()) if out.exists() else None
    return code, report


KNOWN = [
    (("check-space", "--input", "minkowski2.json"), 0),
    (("check-space", "--input", "hyperbolic.json"), 0),
    (("decompose", "--input", "flip.json"), 0),
    (("adjoint", "--domain", "minkowski2.json", "--codomain", "minkowski2.json", "--operator", "e12.json"), 0),
    (("check-algebra", "--input", "m2_krein.json"), 0),
    (("check-algebra", "--input", "m2_dagger_adj.json"), 1),
    (("split", "--input", "m2_krein.json"), 0),
    (("twist", "--input", "m2_krein.json"), 0),
    (("link", "--input", "m2_krein.json"), 0),
    (("link", "--input", "m2_dagger_adj.json"), 2),
    (("envelope", "--input", "m2.json"), 0),
    (("check-category", "--input", "m2.json"), 0),
    (("check-category", "--input", "two_krein.json"), 1),
    (("check-krein-category", "--input", "two_krein.json"), 0),
    (("check-krein-category", "--input", "k.json"), 1),
    (("check-state", "--state", "trace.json"), 0),
    (("gns", "--category", "m2.json", "--state", "e1.json"), 0),
    (("represent-algebra", "--input", "m2_krein.json"), 0),
    (("represent-category", "--input", "two_krein.json"), 0),
    (("double", "--input", "two_krein.json"), 0),
    (("double", "--input", "m2.json"), 2),
]


@pytest.mark.parametrize("argv,code", KNOWN, ids=[" ".join(a[:1] + a[2:3]) for a, _ in KNOWN])
def test_exit_code_matches_verdict(work, monkeypatch, argv, code):
    monkeypatch.chdir(work)
    got, report = run(work, *argv)
    assert got == code
    if code != 2:
        assert report["verdict"] == ("pass" if code == 0 else "fail")
        assert report["command"] == argv[0]


def test_reports_are_byte_identical(work, monkeypatch):
    monkeypatch.chdir(work)
    texts = []
    for name in ("a.json", "b.json"):
        assert cli.run(["represent-category", "--input", "two_krein.json", "--report", name]) == 0
        texts.append((work / name).read_bytes())
    assert texts[0] == texts[1]


def test_timing_is_opt_in(work, monkeypatch):
    monkeypatch.chdir(work)
    _, report = run(work, "check-space", "--input", "minkowski2.json")
    assert report["duration_s"] is None
    _, report = run(work, "check-space", "--input", "minkowski2.json", "--timing")
    assert report["duration_s"] >= 0


def test_gns_report_contents(work, monkeypatch):
    monkeypatch.chdir(work)
    code, report = run(work, "gns", "--category", "m2.json", "--state", "e1.json")
    assert code == 0
    checks = {c["name"]: c for c in report["checks"]}
    assert checks["reconstruction"]["residual"] <= 1e-9


def test_krein_failure_has_witness(work, monkeypatch):
    monkeypatch.chdir(work)
    _, report = run(work, "check-krein-category", "--input", "k.json")
    failed = [c for c in report["checks"] if not c["passed"]]
    assert any("axiom4" in c["name"] for c in failed)
    assert all(c["witness"] is not None for c in failed)


def test_malformed_document_names_field(work, monkeypatch, capsys):
    monkeypatch.chdir(work)
    doc = json.loads((work / "minkowski2.json").read_text())
    doc["payload"]["gram"]["data"][1][0] = "oops"
    (work / "bad.json").write_text(json.dumps(doc))
    assert cli.run(["check-space", "--input", "bad.json"]) == 2
    assert "payload.gram.data[1][0]" in capsys.readouterr().err


def test_missing_file_and_bad_json(work, monkeypatch, capsys):
    monkeypatch.chdir(work)
    assert cli.run(["check-space", "--input", "nope.json"]) == 2
    (work / "broken.json").write_text("{")
    assert cli.run(["check-space", "--input", "broken.json"]) == 2
    assert "invalid JSON" in capsys.readouterr().err


def test_unwritable_report(work, monkeypatch):
    monkeypatch.chdir(work)
    code = cli.run(["check-space", "--input", "minkowski2.json", "--report", str(work / "no" / "dir" / "r.json")])
    assert code == 2


def test_unknown_subcommand():
    assert cli.run(["frobnicate"]) == 2


def test_wrong_kind_rejected(fixtures_dir):
    with pytest.raises(InputError, match="document.kind"):
        docs.load_document(fixtures_dir / "m2.json", "space")


def test_singular_gram_is_input_error():
    doc = docs.parse_document({"version": 1, "kind": "space",
                               "payload": {"gram": docs.encode_matrix(np.diag([1.0, 0.0]))}})
    with pytest.raises(InputError):
        docs.build_space(doc)


@pytest.mark.parametrize("name", ["minkowski2", "flip", "e12", "m2", "k", "m2_krein", "two_krein", "x12"])
def test_parse_serialize_roundtrip(fixtures_dir, name):
    raw = json.loads((fixtures_dir / f"{name}.json").read_text())
    doc = docs.parse_document(raw)
    again = docs.parse_document(json.loads(doc.dumps()))
    assert again.to_json() == doc.to_json() == raw


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**31 - 1))
def test_matrix_encoding_roundtrip(rows, cols, seed):
    rng = np.random.default_rng(seed)
    M = rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))
    back = docs.decode_matrix(json.loads(json.dumps(docs.encode_matrix(M))))
    assert np.array_equal(back, M)
