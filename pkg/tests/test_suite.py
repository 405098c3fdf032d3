from __future__ import annotations

import json

from twocat.suite import FULL, SMOKE, da_selfcheck, run_suite


def test_full_suite_passes():
    rep = run_suite("paper")
    assert [r["check"] for r in rep.results] == [c for c, _ in FULL]
    failed = [r for r in rep.results if r["status"] != "pass"]
    assert not failed, failed
    assert len(rep.certificates) == 4
    props = next(r for r in rep.results if r["check"] == "properties")
    assert props["witness"]["cases"] >= 1000
    json.loads(rep.to_json())


def test_smoke_suite():
    rep = run_suite("smoke")
    assert [r["check"] for r in rep.results] == list(SMOKE)
    assert rep.ok


def test_inputs_are_hashed():
    rep = run_suite("smoke")
    assert "b2-soergel.tbl" in rep.inputs and len(rep.inputs["b2-soergel.tbl"]) == 64


def test_da_selfcheck():
    assert da_selfcheck() == []


def test_unknown_suite():
    import pytest

    with pytest.raises(ValueError):
        run_suite("nightly")
