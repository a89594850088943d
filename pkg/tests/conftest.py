import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from pdakit import PdaArray  # noqa: E402

GOLDEN_ROWS = [
    ["*", 1, 1, 3],
    [1, "*", 1, 2],
    [1, 1, "*", 2],
    [3, 2, 2, "*"],
    ["*", 4, 3, 4],
    [4, "*", 2, 4],
    [3, 2, "*", 3],
    [4, 4, 3, "*"],
]

GOLDEN_CHANNELS = [
    [[1, 1, 1], [1, 2, 2]],
    [[1, 4, 3], [1, 8, 4]],
    [[1, 16, 5], [1, 32, 6]],
    # user 4 is not served in block 1; any generic 2x3 matrix works
    [[1, 3, 7], [2, 5, 11]],
]

# The 12x4 TST display for (G, L, K, t) = (2, 3, 4, 2), labels as printed.
TST_DISPLAY_LABELS = [
    ["*", "*", "1234,1", "1234,1"],
    ["*", "1234,1", "*", "1234,1"],
    ["*", "1234,1", "1234,1", "*"],
    ["1234,1", "*", "*", "1234,2"],
    ["1234,1", "*", "1234,2", "*"],
    ["1234,2", "1234,2", "*", "*"],
    ["*", "*", "1234,2", "1234,2"],
    ["*", "1234,2", "*", "1234,3"],
    ["*", "1234,3", "1234,3", "*"],
    ["1234,2", "*", "*", "1234,3"],
    ["1234,3", "*", "1234,3", "*"],
    ["1234,3", "1234,3", "*", "*"],
]


def labels_to_rows(labels):
    ids = {}
    out = []
    for row in labels:
        out.append(["*" if c == "*" else ids.setdefault(c, len(ids) + 1) for c in row])
    return out


@pytest.fixture
def golden() -> PdaArray:
    return PdaArray.from_rows(GOLDEN_ROWS, G=2, L=3)


@pytest.fixture
def golden_channels():
    return np.array(GOLDEN_CHANNELS, dtype=complex)


@pytest.fixture(scope="session")
def flagship():
    from pdakit.constructions import hybrid
    start = time.perf_counter()
    trace = hybrid(2, 13, 3, 8, 4)
    trace.build_seconds = time.perf_counter() - start
    return trace


class CriterionRecorder:
    """Context manager that logs a PASS/FAIL line for one acceptance criterion."""

    def __init__(self, sink, number: int, title: str):
        self.sink, self.number, self.title = sink, number, title
        self.notes: list[str] = []

    def note(self, text: str) -> None:
        self.notes.append(text)

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        status = "PASS" if exc_type is None else "FAIL"
        detail = "; ".join(self.notes)
        if exc is not None:
            detail = (detail + "; " if detail else "") + f"{exc_type.__name__}: {exc}".splitlines()[0]
        line = f"criterion {self.number:2d} {status} [{elapsed:6.2f}s] {self.title}"
        if detail:
            line += f" -- {detail}"
        self.sink.append(line)
        print(line)
        return False


def pytest_configure(config):
    config._acceptance_lines = []
    config.addinivalue_line("markers", "acceptance: one of the ten acceptance criteria")


@pytest.fixture
def criterion(request):
    sink = request.config._acceptance_lines

    def make(number: int, title: str) -> CriterionRecorder:
        return CriterionRecorder(sink, number, title)
    return make


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_acceptance_lines", [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines, key=lambda s: int(s.split()[1])):
        terminalreporter.write_line(line)
