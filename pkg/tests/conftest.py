import contextlib
import time

import pytest

_RESULTS = {}


class Criterion:
    """Records one acceptance line: pass only if the block finishes without error."""

    def __init__(self, number: int, title: str):
        self.number = number
        self.title = title
        self.notes = []

    def note(self, text: str):
        self.notes.append(text)

    @contextlib.contextmanager
    def run(self):
        start = time.perf_counter()
        ok = False
        try:
            yield self
            ok = True
        finally:
            self.notes.append(f"{time.perf_counter() - start:.1f}s")
            _RESULTS[self.number] = (ok, self.title, "; ".join(self.notes))


@pytest.fixture
def criterion():
    return Criterion


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_RESULTS):
        ok, title, notes = _RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {title} ({notes})")
