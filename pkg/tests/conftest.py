"""Prints one line per acceptance criterion after the run.

pytest captures stdout of passing tests, so the per-criterion verdicts
are emitted from the terminal-summary hook instead.
"""

from __future__ import annotations


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    try:
        from acceptance_util import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(RESULTS):
        entry = RESULTS[num]
        terminalreporter.write_line(
            f"[{num:>2}] {entry['status']:<4} {entry['seconds']:7.2f}s  {entry['label']}"
        )
