"""Runs the ten acceptance criteria; each prints one PASS/FAIL line (visible with ``pytest -s``)."""

import pytest

from adamsring import _accel
from adamsring.acceptance import CRITERIA


@pytest.fixture(scope="module", autouse=True)
def _compiled_kernels():
    _accel.warmup()


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i + 1}" for i in range(len(CRITERIA))])
def test_criterion(criterion, capsys):
    result = criterion()
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
