"""Acceptance gate: every reproduction criterion, run at its stated budget.

Each criterion prints its own PASS/FAIL line (with failure details when red)
so a plain `pytest -v tests/test_acceptance.py -s` doubles as the acceptance
report. The same checks back the `mlspectra repro` command.
"""

import pytest

from mlspectra import repro

NAMES = list(repro.CRITERIA)


@pytest.mark.parametrize("name", NAMES)
def test_criterion(name, capsys):
    res = repro.run_criterion(name, seed=0)
    mark = "PASS" if res.passed else "FAIL"
    budget = "no budget" if res.budget is None else f"budget {res.budget:.0f}s"
    with capsys.disabled():
        print(f"\n{mark} {res.name} ({res.elapsed:.1f}s, {budget})")
        for line in res.failures:
            print(f"     - {line}")
    assert res.passed, f"{name}: " + "; ".join(res.failures)
