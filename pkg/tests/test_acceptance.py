"""The fifteen acceptance criteria, one test each.

Every test prints a ``[PASS]``/``[FAIL]`` line; the lines are also collected
and repeated in the terminal summary so they appear in ``pytest -v`` output.
"""
import time

import pytest

from eisenworks.acceptance import CRITERIA


@pytest.mark.parametrize("num,name,fn", CRITERIA, ids=[f"{n:02d}-{name.replace(' ', '-')}" for n, name, _ in CRITERIA])
def test_criterion(num, name, fn, request):
    t0 = time.perf_counter()
    ok, detail = fn()
    line = f"[{'PASS' if ok else 'FAIL'}] {num:2d} {name}: {detail} ({time.perf_counter() - t0:.1f}s)"
    print(line)
    request.config._acceptance_lines.append((num, line))
    assert ok, line
