import random

import pytest
from fastapi.testclient import TestClient

from helpers import lf


@pytest.fixture
def rng():
    return random.Random(20240607)


@pytest.fixture
def intro_functions():
    return [lf("-1/2", "3/2"), lf(1, -3), lf(3, -1)]


@pytest.fixture
def example1_functions():
    return [lf("1/2", 1), lf("1/3", -1), lf(2, -2), lf(2, -1), lf(3, 0)]


@pytest.fixture
def example2_functions():
    return [lf(2, 2), lf(1, 2), lf(0, 1), lf(2, -3)]


@pytest.fixture
def example3_functions():
    return [lf("1/3", 0), lf("2/3", 1), lf(1, "1/2"), lf(-1, -3), lf(1, -1), lf("3/2", 0), lf(2, 1)]


@pytest.fixture
def client():
    from api_gateway import limiter
    from main import app

    limiter.reset()
    with TestClient(app) as c:
        yield c
