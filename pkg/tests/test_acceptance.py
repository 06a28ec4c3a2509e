"""Exit criteria, each at its stated tolerance and time budget.

Every test records one PASS/FAIL line, shown in the terminal summary.
"""

import subprocess
import sys
import time

import pytest

from genus2theta import acceptance

from conftest import ACCEPTANCE_LINES

# (criterion, wall-clock budget in seconds, timing repeats; the best run counts)
BUDGETS = {
    1: (1e-3, 5),
    2: (10, 1),
    3: (30, 1),
    4: (10, 1),
    5: (120, 1),
    6: (60, 1),
    7: (60, 1),
    8: (1, 1),
    9: (1, 1),
    10: (1, 1),
    11: (1, 1),
    12: (1e-3, 5),
    13: (1, 1),
}


def _record(cid, name, ok, detail):
    ACCEPTANCE_LINES.append(f"criterion {cid}: {'PASS' if ok else 'FAIL'}  {name}  {detail}")
    print(ACCEPTANCE_LINES[-1])


@pytest.mark.parametrize("cid", sorted(BUDGETS))
def test_criterion(cid):
    budget, repeats = BUDGETS[cid]
    crit = acceptance.CRITERIA[cid - 1]
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        report = crit(0)
        best = min(best, time.perf_counter() - start)
    in_time = best < budget
    ok = report["passed"] and in_time
    _record(cid, report["name"], ok, f"time {best:.4g}s / budget {budget:g}s")
    assert report["passed"], report
    assert in_time, f"took {best:.3f}s, budget {budget}s"


def test_criterion_14_determinism():
    cmd = [sys.executable, "-m", "genus2theta", "verify-all", "--seed", "0"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    same = first.stdout == second.stdout and len(first.stdout) > 0
    ok = same and first.returncode == 0 == second.returncode
    _record(14, "determinism", ok, f"{len(first.stdout)} bytes, exit {first.returncode}")
    assert same
    assert first.returncode == 0, first.stdout.decode()[-2000:]
