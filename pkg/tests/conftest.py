"""Shared pytest plumbing.

The acceptance suite registers one verdict per criterion here; the hook
prints them as a block in the terminal summary, where they survive
output capture.
"""

CRITERION_RESULTS: list[tuple[int, str, str]] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not CRITERION_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, status, label in sorted(CRITERION_RESULTS):
        terminalreporter.write_line(f"[criterion {num:02d}] {status} {label}")
