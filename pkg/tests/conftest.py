from __future__ import annotations

import pytest

_CRITERIA: dict[int, list[tuple[bool, str]]] = {}


class CriterionRecorder:
    """Collects pass/fail parts per acceptance criterion; one summary line each."""

    def record(self, item: int, ok: bool, detail: str) -> None:
        _CRITERIA.setdefault(item, []).append((ok, detail))
        print(f"criterion {item}: {'PASS' if ok else 'FAIL'} {detail}")


@pytest.fixture(scope="session")
def criteria() -> CriterionRecorder:
    return CriterionRecorder()


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for item in sorted(_CRITERIA):
        parts = _CRITERIA[item]
        ok = all(p[0] for p in parts)
        detail = "; ".join(p[1] for p in parts)
        terminalreporter.write_line(f"criterion {item:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
