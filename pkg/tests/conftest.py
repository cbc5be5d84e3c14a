"""Prints one pass/fail line per acceptance criterion at the end of the run."""

_DOCS: dict[int, str] = {}
_CASES: dict[int, list[bool]] = {}


def _criterion(name: str) -> int | None:
    # test_criterion_07_triangular[...] -> 7
    if not name.startswith("test_criterion_"):
        return None
    return int(name.split("_")[2].split("[")[0])


def pytest_collection_modifyitems(items):
    for item in items:
        num = _criterion(item.name)
        if num is not None:
            doc = (item.function.__doc__ or "").strip().splitlines()
            _DOCS[num] = doc[0] if doc else ""


def pytest_runtest_logreport(report):
    num = _criterion(report.nodeid.split("::")[-1])
    if num is None:
        return
    if report.when == "call" or report.failed:
        _CASES.setdefault(num, []).append(report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _CASES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(_CASES):
        cases = _CASES[num]
        status = "PASS" if all(cases) else "FAIL"
        extra = f" ({sum(cases)}/{len(cases)} cases)" if len(cases) > 1 else ""
        terminalreporter.write_line(f"criterion {num:2d}: {status}{extra}  {_DOCS.get(num, '')}")
