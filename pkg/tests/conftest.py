import numpy as np
import pytest

from dagum.classify import ThresholdTable


@pytest.fixture(scope="session")
def coarse_table() -> ThresholdTable:
    """Shared 21-point threshold table (no c columns)."""
    return ThresholdTable.build(n=21)


@pytest.fixture(scope="session")
def rng() -> np.random.Generator:
    return np.random.Generator(np.random.Philox(key=[424242]))
