import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))  # for `helpers`

from polycubelabel import shapes
from helpers import build


@pytest.fixture(scope="session")
def cube_mesh():
    return build(*shapes.cube())


@pytest.fixture(scope="session")
def lprism_mesh():
    return build(*shapes.l_prism())


@pytest.fixture(scope="session")
def torus_mesh():
    return build(*shapes.torus())
