import pathlib

import numpy as np
import pytest

SAMPLE_DIR = pathlib.Path(__file__).resolve().parent.parent / "sample_data"
GOLDEN_DIR = pathlib.Path(__file__).resolve().parent / "golden"


@pytest.fixture(scope="session")
def sample_path():
    def get(name):
        path = SAMPLE_DIR / name
        assert path.exists(), f"missing sample file {name}"
        return path

    return get


@pytest.fixture(scope="session")
def golden_path():
    def get(name):
        return GOLDEN_DIR / name

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(0)


def pytest_configure(config):
    config._criterion_lines = {}


@pytest.fixture
def criterion(request):
    """Record one pass/fail line per acceptance criterion, then assert."""
    lines = request.config._criterion_lines

    def record(num, label, ok, detail=""):
        mark = "PASS" if ok else "FAIL"
        suffix = f": {detail}" if detail else ""
        lines[num] = f"criterion {num:2d} [{mark}] {label}{suffix}"
        assert ok, f"criterion {num} ({label}){suffix}"

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "_criterion_lines", {})
    if lines:
        terminalreporter.section("acceptance criteria")
        for num in sorted(lines):
            terminalreporter.write_line(lines[num])
