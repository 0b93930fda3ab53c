import math

import networkx as nx
import pytest

from planedefect.generators import from_drawing, from_networkx
from planedefect.plane_graph import PlaneGraph


def cycle_pg(k: int) -> PlaneGraph:
    return PlaneGraph([[(v - 1) % k, (v + 1) % k] for v in range(k)])


def k4() -> PlaneGraph:
    # outer triangle 0,1,2 with apex 3 in the middle
    pos = {0: (0, 2), 1: (-2, -1), 2: (2, -1), 3: (0, 0)}
    return from_drawing(pos, [(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)], outer_cycle=[0, 1, 2])


def polygon(k, radius=1.0, start=0):
    return {start + i: (radius * math.cos(2 * math.pi * i / k), radius * math.sin(2 * math.pi * i / k))
            for i in range(k)}


def nx_plane(G, outer=None) -> PlaneGraph:
    return from_networkx(nx.convert_node_labels_to_integers(G), outer)


@pytest.fixture
def triangle():
    return cycle_pg(3)


@pytest.fixture
def planar_k4():
    return k4()


# one verdict line per acceptance criterion, printed after the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
