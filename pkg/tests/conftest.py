"""Shared fixtures and the acceptance summary hook.

The lexicon here is written out independently of scripts/regenerate_fixtures.py
on purpose: the sync test comparing it against fixtures/lexicon.json is
double-entry bookkeeping for the fixture content.
"""
from __future__ import annotations

from pathlib import Path

import pytest

from amalgam import AsGraph, EMPTY_TYPE, GraphType, Slot, build_graph

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def make_lexicon() -> dict[str, AsGraph]:
    wash = build_graph(
        [("w", "wash"), ("s_arg", None), ("o_arg", None)],
        [("w", "s_arg", "ARG0"), ("w", "o_arg", "ARG1")],
        {"rt": "w", "s": "s_arg", "o": "o_arg"},
    )
    raven = build_graph([("r", "raven")], [], {"rt": "r"})
    reflexive = build_graph([("x", None)], [], {"rt": "x", "s": "x"})
    return {
        "wash": AsGraph(wash, GraphType({"s": Slot(), "o": Slot()})),
        "raven": AsGraph(raven, EMPTY_TYPE),
        "self": AsGraph(reflexive, GraphType({"s": Slot()})),
    }


@pytest.fixture
def lexicon() -> dict[str, AsGraph]:
    return make_lexicon()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES


# --------------------------------------------------------------------------
# acceptance criteria summary

_CRITERIA: dict[int, tuple[str, bool]] = {}


def record_criterion(number: int, name: str, passed: bool) -> None:
    _CRITERIA[number] = (name, passed)


def pytest_terminal_summary(terminalreporter, exitstatus, config) -> None:
    if not _CRITERIA:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for number in sorted(_CRITERIA):
        name, passed = _CRITERIA[number]
        verdict = "PASS" if passed else "FAIL"
        terminalreporter.write_line(f"criterion {number} ({name}): {verdict}")
