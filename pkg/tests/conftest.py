"""Shared test plumbing: the acceptance scorecard.

``test_acceptance.py`` registers one (number, label, ok, detail) entry per
headline criterion; the terminal-summary hook prints them as a compact
scorecard after the ordinary pytest output, one PASS/FAIL line each.
"""

SCORECARD = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not SCORECARD:
        return
    terminalreporter.section("acceptance scorecard")
    for num, label, ok, detail in sorted(SCORECARD):
        verdict = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {num:2d} {verdict}  {label}: {detail}")
