import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

ACCEPTANCE_LINES: list[str] = []


def record_criterion(num: int, name: str, ok: bool, detail: str = "") -> None:
    """Collect one acceptance-criterion verdict for the terminal summary."""
    line = f"[criterion {num:02d}] {'PASS' if ok else 'FAIL'}  {name}" + (
        f"  ({detail})" if detail else ""
    )
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
