"""Shared fixtures for the TraceRing test suite."""

import numpy as np
import pytest

from src.core.charring import Presentation
from src.core.repeval import Matrix2, Representation

SEED = 7


@pytest.fixture
def seed():
    return SEED


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)


@pytest.fixture
def shears():
    """a1 = (1 1 / 0 1), a2 = (1 0 / 1 1)."""
    return Representation({1: Matrix2(1, 1, 0, 1), 2: Matrix2(1, 0, 1, 1)})


@pytest.fixture
def free3():
    return Presentation(3)
