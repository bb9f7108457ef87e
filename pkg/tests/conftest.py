"""Prints one PASS/FAIL line per acceptance criterion at the end of the run."""

_verdicts: dict[str, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py" not in report.nodeid:
        return
    props = dict(report.user_properties)
    if "criterion" not in props:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        verdict = "PASS" if report.passed else "FAIL"
        _verdicts[props["criterion"]] = (verdict, props.get("detail", ""))


def pytest_terminal_summary(terminalreporter):
    if not _verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_verdicts, key=int):
        verdict, detail = _verdicts[key]
        terminalreporter.write_line(f"criterion {key:>2}: {verdict}  {detail}")
