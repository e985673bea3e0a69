import os
import sys
import random

import pytest


sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

SEED = 20240117


@pytest.fixture
def rng():
    return random.Random(SEED)
