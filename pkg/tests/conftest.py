import json
from pathlib import Path

import pytest
from hypothesis import strategies as st

from lexiepist.corpus import Corpus
from lexiepist.model import parse_belief, parse_game, parse_model

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "lexiepist" / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def game(name: str):
    return parse_game(fixture_text(name))


def model(name: str, game_name: str):
    return parse_model(fixture_text(name), game(game_name))


def belief(name: str):
    return parse_belief(fixture_text(name))


def manifest_entries(kind: str) -> list[dict]:
    entries = json.loads(fixture_text("corpus.json"))["fixtures"]
    return [e for e in entries if e["kind"] == kind]


def tape_pick(data):
    """A ``pick(lo, hi)`` reading one drawn byte string.

    A single draw keeps generation cheap; shrinking the bytes toward zero
    and toward shorter tapes drives every pick toward ``lo``, so failing
    instances shrink to small models.
    """
    tape = data.draw(st.binary(min_size=256, max_size=4096), label="tape")
    pos = 0

    def pick(lo: int, hi: int) -> int:
        nonlocal pos
        b = tape[pos] if pos < len(tape) else 0
        pos += 1
        return lo + b % (hi - lo + 1)

    return pick


@pytest.fixture(scope="session")
def corpus():
    return Corpus(FIXTURES)


# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
