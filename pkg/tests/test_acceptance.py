"""Acceptance battery at full scale: one test and one printed line per
criterion.

The battery takes a few minutes; it runs once per session and each test
asserts one criterion.  The PASS/FAIL line is printed outside pytest's
capture so the battery verdict is always visible in the test log.
"""

import pytest

from rmtlab import acceptance


@pytest.fixture(scope="session")
def battery(tmp_path_factory):
    out = tmp_path_factory.mktemp("acceptance")
    results = acceptance.run_all(profile="full", out_dir=str(out),
                                 echo=lambda line: None)
    return {r.number: r for r in results}


@pytest.mark.parametrize("number", range(1, len(acceptance.CRITERIA) + 1))
def test_criterion(battery, number, capsys):
    result = battery[number]
    status = "PASS" if result.passed else "FAIL"
    with capsys.disabled():
        print(f"\n{status} criterion {result.number:2d} "
              f"[{result.name}]: {result.detail}", end="")
    assert result.passed, f"criterion {number} [{result.name}]: {result.detail}"
