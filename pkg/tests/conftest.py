"""
Test configuration: shared potentials used across the test modules
"""
import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from src.potential import parse_potential


SMOOTH_SOURCES = {
    "linear": "piece [0, 1]: x + 3",
    "oscillating": "piece [0, 1]: 3.3 + x^2/2 + sin(3*x)",
    "exponential": "piece [0, 1]: 2.5 + exp(x)",
    "concave": "piece [0, 1]: 5 - x^2",
}

CONSTANT_SOURCE = "piece [0, 1]: 3"


def jump_source(c: str, side: str = "right") -> str:
    """Oscillating left piece, linear right piece, one jump at c"""
    return (
        f"piece [0, {c}]: 3.3 + x^2/2 + sin(3*x)\n"
        f"piece [{c}, 1]: 3.5 - x\n"
        f"jump at {c} side {side}\n"
    )


@pytest.fixture
def constant_potential():
    return parse_potential(CONSTANT_SOURCE)


@pytest.fixture
def linear_potential():
    return parse_potential(SMOOTH_SOURCES["linear"])


@pytest.fixture(params=sorted(SMOOTH_SOURCES))
def smooth_potential(request):
    return parse_potential(SMOOTH_SOURCES[request.param])


@pytest.fixture
def step_potential():
    """f = 3 on [0, 1/2), 4 from 1/2 on"""
    return parse_potential(
        "piece [0, 0.5]: 3\n"
        "piece [0.5, 1]: 4\n"
        "jump at 0.5 side right\n"
    )
