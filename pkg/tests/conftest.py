import sys


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "REPORTED", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for result in sorted(results, key=lambda r: r.number):
        terminalreporter.write_line(result.line())
