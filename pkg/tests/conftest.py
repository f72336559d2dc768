import pytest

# filled by tests/test_acceptance.py: criterion -> (passed, detail)
ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def record_criterion():
    def record(name: str, passed: bool, detail: str = "") -> None:
        ACCEPTANCE[name] = (passed, detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: (int(s.split()[0].rstrip("abcdef")), s)):
        passed, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {name}  {detail}")
