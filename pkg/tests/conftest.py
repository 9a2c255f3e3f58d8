from __future__ import annotations

import pytest
from hypothesis import settings

from facelab.complex import SimplicialComplex, simplex_boundary
from facelab.fields import FieldSpec
from facelab.generators import bundled
from facelab.manifold import completion

# fixed example generation keeps the suite reproducible run to run
settings.register_profile("facelab", derandomize=True, deadline=None)
settings.load_profile("facelab")

CHAR0 = FieldSpec(32003)
CHAR2 = FieldSpec(2, 16)


@pytest.fixture(scope="session")
def m5() -> SimplicialComplex:
    return bundled("m5")


@pytest.fixture(scope="session")
def a6() -> SimplicialComplex:
    return bundled("a6")


@pytest.fixture(scope="session")
def b3() -> SimplicialComplex:
    return bundled("b3")


@pytest.fixture(scope="session")
def octahedron() -> SimplicialComplex:
    return bundled("octahedron")


@pytest.fixture(scope="session")
def sphere4() -> SimplicialComplex:
    # boundary of the 4-simplex: 5 vertices, facets of size 4
    return simplex_boundary(4)


@pytest.fixture(scope="session")
def a6hat(a6):
    return completion(a6, CHAR0).complex


@pytest.fixture(scope="session")
def m5hat(m5):
    return completion(m5, CHAR2).complex


@pytest.fixture(scope="session")
def b3hat(b3):
    return completion(b3, CHAR0).complex


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
