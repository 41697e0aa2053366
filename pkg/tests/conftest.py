import pytest

# criterion number -> (passed, summary line); filled by test_acceptance.py
ACCEPTANCE = {}


def record(number: int, title: str, passed: bool, detail: str = "") -> None:
    status = "PASS" if passed else "FAIL"
    line = f"[{status}] criterion {number:2d}: {title}"
    if detail:
        line += f" ({detail})"
    ACCEPTANCE[number] = (passed, line)
    print(line)


@pytest.fixture
def rng():
    import numpy as np

    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[k][1])
