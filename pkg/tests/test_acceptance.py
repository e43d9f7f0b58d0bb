"""One test per acceptance criterion; each prints a PASS/FAIL line."""
import pytest

from hcalg.acceptance import CRITERIA, run_criterion


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k, capsys):
    result = run_criterion(k)
    with capsys.disabled():
        print("\n" + result.line())
    assert result.passed, result.line()
