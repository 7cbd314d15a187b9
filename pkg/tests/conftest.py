import math

import numpy as np
import pytest

from splitwalk.lattice import InitialCondition

# three coin states used for the entanglement comparisons
INITIAL_STATES = {
    "up_plus_i_down": InitialCondition(math.pi / 2, math.pi / 2),
    "up_plus_down": InitialCondition(math.pi / 2, 0.0),
    "up": InitialCondition(0.0, 0.0),
}


@pytest.fixture
def rng():
    return np.random.default_rng(20161017)
