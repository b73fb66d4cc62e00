"""End-to-end acceptance checks.

Each numbered verification criterion runs once per session (results are
cached module-wide) and prints a single pass/fail line, so the -s output
doubles as a human-readable report.
"""

import time

import pytest

from quonlib import verify

_reports = None
_total_elapsed = None


def _run_suite():
    global _reports, _total_elapsed
    if _reports is None:
        t0 = time.perf_counter()
        _reports = [fn() for fn in verify.ALL_CRITERIA]
        _total_elapsed = time.perf_counter() - t0
    return _reports


@pytest.mark.parametrize("index", range(len(verify.ALL_CRITERIA)),
                         ids=[f"criterion_{fn.cid:02d}_{fn.__name__}"
                              for fn in verify.ALL_CRITERIA])
def test_criterion(index):
    rep = _run_suite()[index]
    verdict = "PASS" if rep["passed"] else "FAIL"
    print(f"[{verdict}] criterion {rep['id']}: {rep['name']} "
          f"({rep['elapsed']}s)")
    assert rep["passed"], rep["details"]


def test_criterion_12_full_suite_runtime():
    _run_suite()
    verdict = "PASS" if _total_elapsed < 900 else "FAIL"
    print(f"[{verdict}] criterion 12: full suite runtime "
          f"({round(_total_elapsed, 3)}s < 900s)")
    assert _total_elapsed < 900


def test_cli_verify_all_exit_code(capsys):
    from quonlib import cli
    code = cli.run(["--stable-output", "verify-all"])
    out = capsys.readouterr().out
    assert code == 0
    assert '"status": "pass"' in out
