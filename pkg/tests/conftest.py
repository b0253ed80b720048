def pytest_terminal_summary(terminalreporter):
    from tests import test_acceptance as acc
    if not acc.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(acc.RESULTS):
        terminalreporter.write_line(acc.RESULTS[k])
