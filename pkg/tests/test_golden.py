from __future__ import annotations

import importlib.util
import json
from pathlib import Path

import pytest

from kmbraid.golden import (PACKAGE_DATA, compare_golden, load_table, make_table, resolve_golden,
                            to_json, to_latex, to_text)

ROOT = Path(__file__).resolve().parents[1]


def _make_goldens_module():
    spec = importlib.util.spec_from_file_location("make_goldens", ROOT / "scripts" / "make_goldens.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_shipped_goldens_are_current(tmp_path):
    # the shipped files are exactly what the independent encoder writes
    mod = _make_goldens_module()
    mod.main(["--out", str(tmp_path)])
    for name in ("a2_delta.json", "a2_braided_delta.json"):
        assert json.loads((tmp_path / name).read_text()) == json.loads((PACKAGE_DATA / name).read_text())


@pytest.mark.parametrize("name", ["a2_delta.json", "a2_braided_delta.json"])
def test_goldens_match(name):
    res = compare_golden(name)
    assert res.checked == 32
    assert res.ok, res.mismatches


def test_golden_dir_env(tmp_path, monkeypatch):
    data = json.loads((PACKAGE_DATA / "a2_braided_delta.json").read_text())
    (tmp_path / "plain.json").write_text(json.dumps(data["entries"][:9]))
    monkeypatch.setenv("KMBRAID_GOLDEN_DIR", str(tmp_path))
    assert resolve_golden("plain.json") == tmp_path / "plain.json"
    # a bare list named without "braided" is read as a delta table, and delta(t*X) != 0
    res = compare_golden("plain.json")
    assert not res.ok and res.mismatches[0]["element"] == "t*E1"
    (tmp_path / "plain_braided.json").write_text(json.dumps(data["entries"][:9]))
    assert compare_golden("plain_braided.json").ok


def test_mismatch_detected(tmp_path):
    data = json.loads((PACKAGE_DATA / "a2_delta.json").read_text())
    data["entries"][10]["delta"][0][0] = "5"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    res = compare_golden(p)
    assert len(res.mismatches) == 1 and res.mismatches[0]["element"] == data["entries"][10]["element"]


def test_missing_file():
    with pytest.raises(FileNotFoundError):
        resolve_golden("no_such_table.json")


def test_table_matches_golden():
    tab = make_table("affine:A2", 4, "braided")
    golden = load_table("a2_braided_delta.json")
    assert tab["entries"] == golden["entries"]


def test_emitters_deterministic():
    tab = make_table("affine:A2", 2, "delta")
    assert to_json(tab) == to_json(make_table("affine:A2", 2, "delta"))
    tex = to_latex(tab)
    assert tex.startswith("\\begin{align*}") and "\\wedge" in tex
    text = to_text(make_table("affine:A2", 2, "braided", 2))
    assert "dbar(t^2*E1) = (t*E1)/\\(t*H1) - (t*E12)/\\(t*F2)" in text.splitlines()
