import functools

import pytest

from charlevels.groups import BUILTIN_CORPUS_LABELS, group_from_label
from charlevels.verify import GroupContext

ACCEPTANCE_LINES = []


@functools.lru_cache(maxsize=None)
def context(label: str) -> GroupContext:
    spec = group_from_label(label)
    return GroupContext(spec.build(), spec.name)


def group(label: str):
    return context(label).G


def table(label: str):
    return context(label).table


@pytest.fixture(scope="session")
def corpus():
    return [context(lbl) for lbl in BUILTIN_CORPUS_LABELS]


@pytest.fixture
def record():
    def _record(criterion: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append(f"{'PASS' if ok else 'FAIL'}  {criterion}  {detail}".rstrip())
        return ok

    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
