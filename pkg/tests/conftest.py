import pytest

from orbitmesy import IncLabeling, canonical_involution, zigzag
from orbitmesy.verify import ten_element_poset

# element names a..j of the ten-element poset
A, B, C, D, E, F, G, H, I, J = range(10)
RUNNING_LABELS = (1, 1, 2, 4, 6, 4, 3, 8, 9, 8)


@pytest.fixture(scope="session")
def big():
    return ten_element_poset()


@pytest.fixture(scope="session")
def running(big):
    return IncLabeling(big, 9, RUNNING_LABELS)


@pytest.fixture(scope="session")
def z4():
    return zigzag(4)


@pytest.fixture(scope="session")
def k4(z4):
    return canonical_involution(z4)


@pytest.fixture(scope="session")
def lab(z4):
    def make(*labels, q):
        return IncLabeling(z4, q, labels)
    return make


def pytest_terminal_summary(terminalreporter):
    # one line per acceptance criterion, whatever the capture mode
    from test_acceptance import RESULTS, line
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for name, (ok, elapsed, detail) in RESULTS.items():
            terminalreporter.write_line(line(name, ok, elapsed, detail))
