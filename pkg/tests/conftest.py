"""Shared fixtures: small complexes with known invariants."""

import pytest

from tightmorse import constructions, from_facets
from tightmorse.complex_core import SimplicialComplex


@pytest.fixture
def triangle() -> SimplicialComplex:
    return from_facets([(1, 2, 3)])


@pytest.fixture
def checkerboard() -> SimplicialComplex:
    return constructions.checkerboard()


@pytest.fixture
def simplex3() -> SimplicialComplex:
    return from_facets([(0, 1, 2, 3)])


@pytest.fixture
def boundary_delta3() -> SimplicialComplex:
    return from_facets([(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)])


@pytest.fixture
def boundary_delta2() -> SimplicialComplex:
    return from_facets([(1, 2), (2, 3), (1, 3)])


def annulus_complex(m: int = 3) -> SimplicialComplex:
    """Triangulated annulus: outer cycle 0..m-1, inner cycle m..2m-1."""
    tris = []
    for i in range(m):
        j = (i + 1) % m
        tris.append((i, j, m + i))
        tris.append((j, m + i, m + j))
    return from_facets(tris)


def fan_disc(k: int) -> SimplicialComplex:
    """Disc: k triangles around a center vertex 0, rim 1..k+1."""
    return from_facets([(0, i, i + 1) for i in range(1, k + 1)])


@pytest.fixture
def annulus() -> SimplicialComplex:
    return annulus_complex(3)


@pytest.fixture
def octahedron():
    return constructions.convex_fixture("octahedron_boundary")
