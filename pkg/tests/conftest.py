"""Shared test configuration: pin the working precision.

Every tolerance in the suite assumes 50 decimal digits, so the
precision is set once here rather than relying on the importing
order of individual test modules.
"""

import pytest
from mpmath import mp


@pytest.fixture(autouse=True)
def _fixed_precision():
    saved = mp.dps
    mp.dps = 50
    yield
    mp.dps = saved
