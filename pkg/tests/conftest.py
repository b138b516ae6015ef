from __future__ import annotations

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).parent))

import pytest
from hypothesis import HealthCheck, settings

from sdepthlab.engines import EngineCache

settings.register_profile(
    "suite",
    deadline=None,
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much],
)
settings.load_profile("suite")


@pytest.fixture
def cache() -> EngineCache:
    return EngineCache()


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    from helpers import ACCEPTANCE, CRITERIA

    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(CRITERIA):
        entry = ACCEPTANCE.get(num)
        if entry is None:
            terminalreporter.write_line(
                f"criterion {num:2d}: FAIL (not run) - {CRITERIA[num]}"
            )
        else:
            terminalreporter.write_line(
                f"criterion {num:2d}: {entry['outcome']}"
                f" ({entry['seconds']:.2f}s) - {entry['desc']}"
            )
