"""One test per acceptance criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` (or ``carlitz-forms selfcheck``);
the lines are repeated in the terminal summary.
"""

import json

import pytest

from carlitz_forms.acceptance import CRITERIA, run_criterion, summary_line

from conftest import ACCEPTANCE_LINES


@pytest.mark.parametrize("number", [c[0] for c in CRITERIA], ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number):
    result = run_criterion(number)
    line = summary_line(result)
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert result["pass"], json.dumps(result["detail"], default=str)[:2000]


if __name__ == "__main__":
    for cid, *_ in CRITERIA:
        print(summary_line(run_criterion(cid)))
