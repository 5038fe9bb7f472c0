from __future__ import annotations

import pytest

from reslat.enumerator import enumerate_residuated
from reslat.latfile import load_bundled


@pytest.fixture(scope="session")
def a6():
    return load_bundled("a6").lattice


@pytest.fixture(scope="session")
def a8():
    return load_bundled("a8").lattice


@pytest.fixture(scope="session")
def corpus4():
    """Every residuated lattice of order up to 4, isomorph-free."""
    out = []
    for n in range(1, 5):
        out.extend(enumerate_residuated(n, workers=1))
    return tuple(out)


@pytest.fixture(scope="session")
def corpus5(corpus4):
    """Every residuated lattice of order up to 5, isomorph-free."""
    return corpus4 + tuple(enumerate_residuated(5, workers=1))
