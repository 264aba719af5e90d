import pytest

from nsenum.census import CensusRecord, generate_closed
from nsenum.constructions import four_block
from nsenum.dd import enumerate_vertex_surfaces
from nsenum.isosig import iso_signature


class CensusCache:
    """Generate each census size at most once per test session."""

    def __init__(self):
        self._tris = {}
        self._records = {}

    def tris(self, n):
        if n not in self._tris:
            self._tris[n] = generate_closed(n)
        return self._tris[n]

    def records(self, n):
        if n not in self._records:
            self._records[n] = [
                CensusRecord(
                    n, i, iso_signature(t), enumerate_vertex_surfaces(t).sigma
                )
                for i, t in enumerate(self.tris(n))
            ]
        return self._records[n]


@pytest.fixture(scope="session")
def census():
    return CensusCache()


@pytest.fixture(scope="session")
def block():
    """The four-tetrahedron block together with its enumeration result."""
    b = four_block()
    return b, enumerate_vertex_surfaces(b.triangulation)
