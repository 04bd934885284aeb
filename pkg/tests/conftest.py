import math

import numpy as np
import pytest

from twodir.fixtures import load_fixture
from twodir.mask import CoeffSeq, TwoDirectionSystem


@pytest.fixture(scope="session")
def sys51():
    return load_fixture("example-5.1")


@pytest.fixture(scope="session")
def sys52():
    return load_fixture("example-5.2")


@pytest.fixture(params=["example-5.1", "example-5.2"], scope="session")
def fixture_sys(request):
    return load_fixture(request.param)


def hat_system():
    """Hat function split evenly between the two directions (d=2, r=1)."""
    h = {-1: 0.5 / math.sqrt(2), 0: 1.0 / math.sqrt(2), 1: 0.5 / math.sqrt(2)}
    half = CoeffSeq(1, {k: [[v / 2]] for k, v in h.items()})
    return TwoDirectionSystem("hat", 2, 1, half, half)


@pytest.fixture
def hat():
    return hat_system()
