"""Prints one PASS/FAIL line per acceptance criterion after the run."""

_AC_RESULTS: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    key = props["criterion"]
    failed = report.failed
    if report.when == "call" or failed:
        prev = _AC_RESULTS.get(key, ("PASS", props.get("summary", "")))[0]
        _AC_RESULTS[key] = ("FAIL" if failed or prev == "FAIL" else "PASS", props.get("summary", ""))


def pytest_terminal_summary(terminalreporter):
    if not _AC_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_AC_RESULTS, key=lambda k: int(k[2:])):
        status, summary = _AC_RESULTS[key]
        terminalreporter.write_line(f"{key} {status}  {summary}")
