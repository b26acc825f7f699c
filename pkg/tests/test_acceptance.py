"""Acceptance gate: every verification criterion must pass at its stated
tolerance and within its time budget.

Run with `pytest tests/test_acceptance.py -v` for one line per criterion;
`cutpoint verify --suite all` prints the same checks with timings.
"""

import pytest

from cutpoint.verify import CRITERIA, run_criterion

CRITERION_IDS = [name for name, _, _, _ in CRITERIA]


@pytest.mark.parametrize("criterion", CRITERION_IDS)
def test_criterion(criterion):
    result = run_criterion(criterion)
    print(f"{'PASS' if result.ok else 'FAIL'} {criterion}: {result.detail} "
          f"[{result.elapsed:.2f}s / budget {result.budget:g}s]")
    assert result.ok, f"{criterion}: {result.detail}"
    assert result.within_budget, (
        f"{criterion} took {result.elapsed:.2f}s, budget {result.budget:g}s"
    )


def test_every_criterion_is_covered():
    assert len(CRITERION_IDS) == 13
    assert len(set(CRITERION_IDS)) == 13
