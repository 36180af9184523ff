"""The thirteen acceptance criteria at their stated tolerances.

Each test prints one ``[PASS]``/``[FAIL]`` line with the worst error and the
runtime against its budget.  Run directly for a plain summary::

    python tests/test_acceptance.py
"""
import sys
import time

import pytest

from ellint.validation import GROUPS

PROFILE = "full"
# runtime budgets in seconds, per criterion
BUDGET = {1: 1, 2: 30, 3: 60, 4: 60, 5: 60, 6: 30, 7: 120, 8: 10, 9: 60, 10: 120, 11: 5, 12: 120, 13: 300}


def run_criterion(num):
    title, fn = GROUPS[num]
    t0 = time.perf_counter()
    checks = fn(PROFILE)
    elapsed = time.perf_counter() - t0
    ok = bool(checks) and all(c.passed for c in checks) and elapsed < BUDGET[num]
    worst = max(checks, key=lambda c: c.error / (c.tolerance or 1.0))
    line = (
        f"[{'PASS' if ok else 'FAIL'}] {num:2d} {title}: {len(checks)} checks, "
        f"worst {worst.error:.2e} (tol {worst.tolerance:.0e}, {worst.name}), "
        f"{elapsed:.2f}s of {BUDGET[num]}s"
    )
    return ok, line, checks, elapsed


@pytest.mark.parametrize("num", sorted(GROUPS))
def test_criterion(num, capsys):
    ok, line, checks, elapsed = run_criterion(num)
    with capsys.disabled():
        print("\n" + line)
    failed = [f"{c.name}: |err|={c.error:.3e} > {c.tolerance:.0e}" for c in checks if not c.passed]
    assert not failed, "; ".join(failed)
    assert elapsed < BUDGET[num]


if __name__ == "__main__":
    results = [run_criterion(n) for n in sorted(GROUPS)]
    for _, line, _, _ in results:
        print(line)
    sys.exit(0 if all(r[0] for r in results) else 1)
