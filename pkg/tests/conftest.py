import mpmath
import pytest

from bandpp.precision import PrecisionContext


@pytest.fixture(scope="session")
def ctx():
    return PrecisionContext(50)


@pytest.fixture(scope="session")
def ctx100():
    return PrecisionContext(100)


def rel(a, b):
    return abs(a - b) / max(abs(b), mpmath.mpf(10) ** -300)


@pytest.fixture(scope="session")
def exact_count():
    """Cached exact G_{n,m} (m=None for the width-unrestricted column-strict family)."""
    from functools import lru_cache

    from bandpp.counting import Family, euler_transform_counts

    @lru_cache(maxsize=None)
    def table(m, n_max):
        fam = Family.column_strict() if m is None else Family.bpp(m)
        return euler_transform_counts(fam, n_max).counts

    def get(n, m=None, n_max=None):
        return table(m, n_max or n)[n]

    return get


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
