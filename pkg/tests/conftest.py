import numpy as np
import pytest
from hypothesis import settings

from cswenodg import BoundarySpec, build_uniform_1d, build_uniform_2d, project_function

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture
def periodic1d():
    return BoundarySpec.periodic_all(1)


@pytest.fixture
def periodic2d():
    return BoundarySpec.periodic_all(2)


def project_1d(func, K=16, degree=2, a=0.0, b=2 * np.pi):
    """Projection of ``func(x) -> (m, ...)`` on a uniform mesh."""
    return project_function(func, build_uniform_1d(a, b, K), degree)


def project_2d(func, K=8, degree=2, a=0.0, b=2 * np.pi):
    return project_function(func, build_uniform_2d((a, b), (a, b), K, K), degree)


# -- acceptance reporting ------------------------------------------------------------
#
# Acceptance checks record ``(criterion, label, ok, detail)``; the terminal
# summary prints one PASS/FAIL line per criterion, followed by its sub-checks.

ACCEPTANCE = {}


@pytest.fixture
def criterion():
    """``criterion(n, label, ok, detail)`` records one acceptance sub-check and returns ``ok``."""

    def record(n, label, ok, detail=""):
        ok = bool(ok)
        ACCEPTANCE.setdefault(n, []).append((label, ok, detail))
        print(f"CRITERION {n} [{label}]: {'PASS' if ok else 'FAIL'} {detail}")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        checks = ACCEPTANCE[n]
        failed = [label for label, ok, _ in checks if not ok]
        verdict = "FAIL" if failed else "PASS"
        extra = f" (failing: {', '.join(failed)})" if failed else ""
        terminalreporter.write_line(f"CRITERION {n}: {verdict} {len(checks) - len(failed)}/{len(checks)} checks{extra}")
        for label, ok, detail in checks:
            terminalreporter.write_line(f"    [{label}] {'PASS' if ok else 'FAIL'} {detail}")
