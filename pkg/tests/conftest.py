import contextlib

import pytest

_KEY = pytest.StashKey[dict]()


def pytest_configure(config):
    config.stash[_KEY] = {}


class _Record:
    detail = ""


@pytest.fixture
def criterion(request):
    """Context manager that logs one PASS/FAIL line for an acceptance criterion."""
    log = request.config.stash[_KEY]

    @contextlib.contextmanager
    def run(number: int, title: str):
        rec = _Record()
        ok = False
        try:
            yield rec
            ok = True
        finally:
            line = f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}"
            if rec.detail:
                line += f"  ({rec.detail})"
            log[number] = line
            print(line)

    return run


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    log = config.stash.get(_KEY, {})
    if log:
        terminalreporter.section("acceptance criteria")
        for k in sorted(log):
            terminalreporter.write_line(log[k])
