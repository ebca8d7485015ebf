from __future__ import annotations

import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    import _acceptance_log

    if not _acceptance_log.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_log.RESULTS):
        passed, detail = _acceptance_log.RESULTS[number]
        terminalreporter.write_line(f"criterion {number:2d}: {'PASS' if passed else 'FAIL'}  {detail}")
