"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Run directly (``python tests/test_acceptance.py``) for just the ten lines.
"""
import json
import sys

import pytest

from hexad.acceptance import CRITERIA, run_criterion
from hexad.cli import main

try:
    from conftest import ACCEPTANCE_LINES
except ImportError:  # executed as a script outside pytest
    ACCEPTANCE_LINES = {}


@pytest.mark.parametrize("number", range(1, len(CRITERIA) + 1), ids=lambda n: f"criterion_{n}")
def test_criterion(number):
    res = run_criterion(number, seed=0)
    line = res.line()
    ACCEPTANCE_LINES[number] = line
    print(line)
    for c in res.checks:
        if not c.ok:
            print(f"    failing check: {c.name}: {c.detail}")
    assert res.passed, line


def test_verify_command_reports_all_criteria(capsys):
    code = main(["verify-paper", "--json"])
    rep = json.loads(capsys.readouterr().out)
    crit = rep["result"]["criteria"]
    assert [c["number"] for c in crit] == list(range(1, 11))
    assert code == (0 if all(c["passed"] for c in crit) else 1)


if __name__ == "__main__":
    results = [run_criterion(i) for i in range(1, len(CRITERIA) + 1)]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
