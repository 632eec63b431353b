from datetime import datetime

import numpy as np
import pytest

from pvmi import HourlySeries

START = datetime(2022, 3, 1)


def make_series(power, irradiance=None, start=START):
    """Build an HourlySeries from plain lists; NaN in power marks missing."""
    power = np.asarray(power, dtype=float)
    if irradiance is None:
        irradiance = np.linspace(0.0, 1.0, power.size)
    return HourlySeries(start, power, np.asarray(irradiance, dtype=float))


@pytest.fixture
def rng():
    return np.random.default_rng(8237)


# one line per acceptance criterion, echoed after the run so the verdicts are
# visible even when pytest captures stdout
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
