import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from entax.schmidt import SchmidtVector  # noqa: E402


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)


@pytest.fixture
def catalysis_instance():
    return (
        SchmidtVector([0.4, 0.4, 0.1, 0.1]),
        SchmidtVector([0.5, 0.25, 0.25]),
        SchmidtVector([0.6, 0.4]),
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
