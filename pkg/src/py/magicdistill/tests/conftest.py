from __future__ import annotations

import numpy as np
import pytest

from magicdistill.config import MAGICDISTILL_CHECK_INVARIANTS
from magicdistill.testing import capture_magicdistill_logs, list_logged_exceptions

MAGICDISTILL_CHECK_INVARIANTS.current = True


@pytest.fixture(autouse=True)
def fail_on_logged_exceptions():
    with capture_magicdistill_logs() as records:
        yield
        logged = list_logged_exceptions(records, log_level=0)
    if logged:
        raise logged[0]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
