import pytest

_ACCEPTANCE: dict[int, tuple[bool, str]] = {}


class AcceptanceReport:
    def record(self, number: int, ok: bool, detail: str):
        _ACCEPTANCE[number] = (ok, detail)
        print(f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail}")


@pytest.fixture(scope="session")
def acceptance():
    return AcceptanceReport()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        ok, detail = _ACCEPTANCE[number]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} {number:2d}: {detail}")
