from hypothesis import HealthCheck, settings

settings.register_profile("sfrel", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("sfrel")


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("tests.test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
