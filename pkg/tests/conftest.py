import sys
import time
from contextlib import contextmanager
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

_CRITERIA = []


@pytest.fixture
def criterion():
    """Record one acceptance criterion: label, outcome, runtime budget."""

    @contextmanager
    def check(label, budget):
        start = time.perf_counter()
        entry = {"label": label, "ok": False, "elapsed": None, "budget": budget}
        _CRITERIA.append(entry)
        yield
        entry["elapsed"] = time.perf_counter() - start
        assert entry["elapsed"] < budget, f"{label}: {entry['elapsed']:.2f}s over {budget}s budget"
        entry["ok"] = True

    return check


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for e in _CRITERIA:
        status = "PASS" if e["ok"] else "FAIL"
        t = "n/a" if e["elapsed"] is None else f"{e['elapsed']:.2f}s"
        terminalreporter.write_line(f"{status}  {e['label']}  ({t}, budget {e['budget']}s)")
