import sys

from hypothesis import HealthCheck, settings

# derandomized so the suite is reproducible; no per-example deadline for exact algebra
settings.register_profile("repro", derandomize=True, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("repro")


def pytest_terminal_summary(terminalreporter):
    mod = next((m for name, m in list(sys.modules.items()) if name.endswith("test_acceptance")), None)
    if mod is None or not mod.RESULTS:
        return
    RESULTS, TITLES = mod.RESULTS, mod.TITLES
    terminalreporter.section("acceptance criteria")
    for n in sorted(TITLES):
        status, note, dt = RESULTS.get(n, ("NOT RUN", TITLES[n], 0.0))
        terminalreporter.write_line(f"criterion {n:2d}: {status:7} {dt:6.2f}s  {note}")
