from __future__ import annotations

import functools

import pytest

from segcert.interval import from_decimal
from segcert.reference import REFERENCE_CONFIGS
from segcert.refinement import refine


@functools.lru_cache(maxsize=None)
def refined(name: str):
    ref = next(r for r in REFERENCE_CONFIGS if r.name == name)
    problem = ref.problem()
    seg, rep = refine(problem, 6, 2, c_tilde=from_decimal(ref.c_tilde))
    return ref, problem, seg, rep


@pytest.fixture(params=[r.name for r in REFERENCE_CONFIGS])
def config_name(request):
    return request.param


@pytest.fixture
def refined_config(config_name):
    return refined(config_name)


# criterion lines recorded by test_acceptance.py, printed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
