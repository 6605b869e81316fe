import pytest

_ACCEPTANCE = []


class _Recorder:
    def __call__(self, number, title, ok, elapsed, limit):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        line = f"{status} criterion {number:>2}: {title} ({elapsed:.2f} s, limit {limit} s)"
        _ACCEPTANCE.append((number, line))
        print(line)
        return status == "PASS"


@pytest.fixture
def criterion():
    return _Recorder()


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE):
        terminalreporter.write_line(line)
