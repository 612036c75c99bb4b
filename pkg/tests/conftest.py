"""Pytest hooks: collect acceptance-criterion verdicts for the run summary."""

from __future__ import annotations

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, name: str, ok: bool) -> None:
    line = f"criterion {number:2d} {name}: {'PASS' if ok else 'FAIL'}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
