import re
import sys
from pathlib import Path

from hypothesis import settings

sys.path.insert(0, str(Path(__file__).parent))

# reproducible property runs: fixed example order, no per-example deadline
settings.register_profile("repo", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repo")

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)_(\w+)")


def pytest_terminal_summary(terminalreporter):
    """One line per acceptance criterion, failing if any of its tests failed."""
    outcome: dict[tuple[int, str], bool] = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = _CRITERION.search(getattr(rep, "nodeid", ""))
            if m is None or rep.when not in ("call", "setup"):
                continue
            ident = (int(m.group(1)), m.group(2).split("[")[0])
            outcome[ident] = outcome.get(ident, True) and key == "passed"
    if not outcome:
        return
    by_criterion: dict[int, list] = {}
    for (n, name), ok in outcome.items():
        by_criterion.setdefault(n, []).append((name, ok))
    terminalreporter.section("acceptance criteria")
    for n in sorted(by_criterion):
        parts = by_criterion[n]
        status = "PASS" if all(ok for _, ok in parts) else "FAIL"
        names = ", ".join(name for name, _ in sorted(parts))
        terminalreporter.write_line(f"criterion {n}: {status}  ({names})")
