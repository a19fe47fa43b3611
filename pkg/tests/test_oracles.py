"""Golden fixture entries, one test per entry."""

import pytest

from conftest import manifest_entries
from lexiepist.corpus import run_entry

ENTRIES = [e for e in manifest_entries("parse") + manifest_entries("check") + manifest_entries("common")
           + manifest_entries("optimal") + manifest_entries("ladder") + manifest_entries("solve")
           + manifest_entries("distance") + manifest_entries("transform") + manifest_entries("verify")]


@pytest.mark.parametrize("entry", ENTRIES, ids=[e["id"] for e in ENTRIES])
def test_fixture_entry(corpus, entry):
    result = run_entry(corpus, entry)
    if entry.get("disputed"):
        # the claimed value is recorded; the literal definitions give the opposite
        assert result.status == "fail", result.detail
        return
    assert result.status == "pass", result.detail
