import numpy as np
import pytest

from util import SEED


@pytest.fixture
def rng():
    return np.random.default_rng(SEED)
