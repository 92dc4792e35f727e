"""One test per acceptance criterion; each prints a PASS/FAIL line."""

from __future__ import annotations

import pytest

from picdual.acceptance import CHECKS, run_check


@pytest.mark.parametrize("number", [c[0] for c in CHECKS], ids=[f"{c[0]:02d}-{c[1]}" for c in CHECKS])
def test_criterion(number, capsys):
    result = run_check(number, seed=0)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.ok, result.detail


def test_all_criteria_listed():
    assert [c[0] for c in CHECKS] == list(range(1, 15))
