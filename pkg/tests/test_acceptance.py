"""Acceptance criteria at their stated tolerances; run with ``-s`` to see the lines."""
import pytest

from cmc_kit import acceptance


@pytest.mark.parametrize("number", [c[0] for c in acceptance.CRITERIA],
                         ids=[c[2] + "-" + c[1].lower().replace(" ", "-") for c in acceptance.CRITERIA])
def test_criterion(number):
    result = acceptance.run_criterion(number)
    print(result.line())
    assert result.passed, "\n".join(str(c) for c in result.checks if not c.ok) or result.error
