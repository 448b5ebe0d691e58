import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# one summary line per acceptance criterion, printed after the run
_criterion_results: dict[str, bool] = {}


def pytest_runtest_logreport(report):
    if report.when != "call":
        return
    name = report.nodeid.rsplit("::", 1)[-1]
    if name.startswith("test_criterion_"):
        _criterion_results[name] = report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criterion_results:
        return
    terminalreporter.write_sep("-", "acceptance criteria")
    for name in sorted(_criterion_results):
        num, _, slug = name.removeprefix("test_criterion_").partition("_")
        outcome = "PASS" if _criterion_results[name] else "FAIL"
        terminalreporter.write_line(
            f"[criterion {num}] {slug.replace('_', ' ')}: {outcome}"
        )
