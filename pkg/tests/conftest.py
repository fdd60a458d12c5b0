import numpy as np
import pytest
from hypothesis import settings

from inscribed import random_convex_polygon

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")

# one line per acceptance criterion, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def report(label: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'}  {label}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line, flush=True)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def random_polygons():
    def make(count, lo, hi, seed):
        g = np.random.default_rng(seed)
        return [random_convex_polygon(int(g.integers(lo, hi + 1)), g) for _ in range(count)]

    return make
