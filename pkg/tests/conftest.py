import numpy as np
import pytest
from hypothesis import settings

# the first call of each compiled kernel pays its JIT cost
settings.register_profile("default", deadline=None)
settings.load_profile("default")

# acceptance verdicts, filled by test_acceptance.py and echoed after the run
ACCEPTANCE: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
