"""One test per acceptance criterion; each prints a single pass/fail line."""

import pytest

from tmf13.acceptance import CHECKS, run_check


@pytest.mark.parametrize("number", sorted(CHECKS), ids=[f"{n:02d}-{CHECKS[n][0].replace(' ', '-')}" for n in sorted(CHECKS)])
def test_acceptance(number, acceptance_log):
    result = run_check(number)
    line = result.line()
    acceptance_log.append(line)
    print(line)
    assert result.passed, line
