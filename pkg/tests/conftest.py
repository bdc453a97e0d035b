import pytest

# criterion number -> (passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict[int, list] = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    entry = ACCEPTANCE.setdefault(number, [title, True, []])
    entry[1] = entry[1] and passed
    if detail:
        entry[2].append(detail)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, passed, details = ACCEPTANCE[number]
        line = f"criterion {number:2d} {'PASS' if passed else 'FAIL'}  {title}"
        if details:
            line += "  [" + "; ".join(details) + "]"
        terminalreporter.write_line(line)
