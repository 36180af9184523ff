import math

import numpy as np
import pytest
from hypothesis import settings

settings.register_profile("ellint", max_examples=60, deadline=None)
settings.load_profile("ellint")

RHO = complex(0.5, math.sqrt(3) / 2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
