import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from finitype import build_vector_graph  # noqa: E402
from finitype.systems import (  # noqa: E402
    golden_reflected,
    golden_translates,
    middle_thirds_cantor,
    n_map,
    three_maps_half,
    thirds,
)

SPECS = Path(__file__).resolve().parent.parent / "specs"

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def translates_graph():
    return build_vector_graph(golden_translates())


@pytest.fixture(scope="session")
def reflected_graph():
    return build_vector_graph(golden_reflected())


@pytest.fixture(scope="session")
def half_graph():
    return build_vector_graph(three_maps_half())


@pytest.fixture(scope="session")
def nmap_graph():
    return build_vector_graph(n_map())


@pytest.fixture(scope="session")
def thirds_graph():
    return build_vector_graph(thirds())


@pytest.fixture(scope="session")
def cantor_graph():
    return build_vector_graph(middle_thirds_cantor())


@pytest.fixture(scope="session")
def specs_dir():
    return SPECS
