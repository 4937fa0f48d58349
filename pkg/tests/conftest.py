from __future__ import annotations

from pathlib import Path

import pytest

from filum.corpus import Corpus, ingest_work

FIXTURE_DIR = Path(__file__).parent / "fixtures" / "casestudy"
CASE_STUDY_FILES = ("aeneid.txt", "thyestes.txt", "progne.txt", "medea.txt")


def build_case_corpus() -> Corpus:
    works = tuple(ingest_work(str(FIXTURE_DIR / name)) for name in CASE_STUDY_FILES)
    return Corpus("casestudy", works)


@pytest.fixture(scope="session")
def case_corpus() -> Corpus:
    return build_case_corpus()


@pytest.fixture()
def case_store(tmp_path) -> tuple[str, str]:
    """(store_root, corpus_name) with the case-study corpus ingested via the CLI."""
    from filum.cli import main

    store = tmp_path / "store"
    files = [str(FIXTURE_DIR / name) for name in CASE_STUDY_FILES]
    code = main(["ingest", *files, "--corpus", "casestudy", "--store", str(store)])
    assert code == 0
    return str(store), "casestudy"


_acceptance_results: list[tuple[str, str]] = []
_acceptance_notes: list[str] = []


def acceptance_note(text: str) -> None:
    """Collect a line for the end-of-run acceptance summary (e.g. timings)."""
    _acceptance_notes.append(text)


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance_results.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance_results:
        label = "PASS" if outcome == "passed" else outcome.upper()
        terminalreporter.write_line(f"{label}: {name}")
    for note in _acceptance_notes:
        terminalreporter.write_line(note)
