"""Acceptance criteria C1-C10 at full scale.

Each test prints one PASS/FAIL line (run with ``-s`` to see them) and asserts
zero violations within the stated runtime limit.
"""

import pytest

from deckrecon import suite


@pytest.mark.slow
@pytest.mark.parametrize("key", list(suite.CRITERIA))
def test_criterion(key):
    res = suite.CRITERIA[key]("full")
    print(res.line())
    assert res.passed, res.line()
