"""Acceptance suite: one PASS/FAIL line per criterion, full-size settings.

Tolerances live in htrmt.verify and are the contract values:
  C1 exact equality, C2 exact equality, C3 relative 1e-10, C4 relative 1e-5,
  C5 L1 < 0.03 (N = 5000, 500 trials), C6 |z| < 3, C7 within 15% and 1e-12,
  C8 0.05 / 1e-3 / 5%, C9 every property green.
"""
import pytest

from htrmt.verify import CRITERIA, run_criterion

KEYS = [key for key, *_ in CRITERIA]


@pytest.mark.parametrize("key", KEYS)
def test_criterion(key, capsys):
    result = run_criterion(key, seed=0, quick=False)
    with capsys.disabled():
        print(f"\n{result.line()} budget {result.budget:.0f}s")
        for c in result.checks:
            if not c.passed:
                shown = {k: c.detail[k] for k in ("got", "want") if k in c.detail}
                print(f"    {c.name}: measured {c.measured!r} target {c.target!r} tol {c.tolerance!r} {shown}")
    failing = [c.name for c in result.checks if not c.passed]
    assert not failing, f"{key} failing checks: {failing}"
    assert result.seconds < result.budget, f"{key} took {result.seconds:.1f}s over {result.budget:.0f}s"
