import random
from fractions import Fraction

import pytest

from picardirr.ring import GradedRing, RingElement


def random_element(rng: random.Random, ring: GradedRing, density: float = 0.6, bound: int = 9, constant=None) -> RingElement:
    terms = {}
    for exp in ring.monomials():
        if rng.random() < density:
            terms[exp] = Fraction(rng.randint(-bound, bound), rng.randint(1, 4))
    if constant is not None:
        terms[(0,) * ring.ngens] = Fraction(constant)
    return RingElement(ring, terms)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
