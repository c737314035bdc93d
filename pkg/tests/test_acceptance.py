"""Acceptance gate: one test per criterion, each printing its check lines."""
import pytest

from qvac import reproduce


@pytest.mark.parametrize("number", sorted(reproduce.CRITERIA))
def test_criterion(number, capsys):
    checks = reproduce.CRITERIA[number]()
    ok = all(c.passed for c in checks)
    with capsys.disabled():
        print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}")
        for c in checks:
            print("   " + c.line())
    assert ok, "; ".join(c.line() for c in checks if not c.passed)
