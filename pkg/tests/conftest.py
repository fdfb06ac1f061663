ACCEPTANCE_LINES: dict = {}


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    """Remember one acceptance verdict; printed in the terminal summary."""
    ACCEPTANCE_LINES[number] = "[{}] criterion {:>2}: {}{}".format(
        "PASS" if ok else "FAIL", number, title, " ({})".format(detail) if detail else "")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[number])
