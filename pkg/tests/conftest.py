import contextlib
import time

ACCEPTANCE: dict[int, tuple[str, str, str]] = {}


@contextlib.contextmanager
def criterion(number: int, title: str):
    """Record PASS/FAIL for an acceptance criterion; the detail dict is filled by the body."""
    detail: dict = {}
    start = time.perf_counter()
    try:
        yield detail
    except BaseException:
        ACCEPTANCE[number] = ("FAIL", title, _fmt(detail, start))
        raise
    ACCEPTANCE[number] = ("PASS", title, _fmt(detail, start))


def _fmt(detail: dict, start: float) -> str:
    parts = [f"{k}={v}" for k, v in detail.items()]
    parts.append(f"{time.perf_counter() - start:.2f}s")
    return ", ".join(parts)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        status, title, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"{status} criterion {n:>2}: {title} ({detail})")
