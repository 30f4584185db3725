from __future__ import annotations

import pytest

_criteria: dict[int, dict] = {}


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    number, title = marker.args
    detail = dict(item.user_properties).get("detail", "")
    _criteria[number] = {"title": title, "ok": call.excinfo is None, "detail": detail}


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        c = _criteria[number]
        status = "PASS" if c["ok"] else "FAIL"
        line = f"criterion {number:2d} {status}  {c['title']}"
        if c["detail"]:
            line += f"  [{c['detail']}]"
        terminalreporter.write_line(line)


@pytest.fixture
def detail(request):
    """Attach a short result string shown on the criterion's summary line."""
    def record(text: str) -> None:
        request.node.user_properties.append(("detail", text))
    return record
