import random
from fractions import Fraction

import pytest
import sympy

from app.core.event_bus import EventBus
from app.modules.congruences.core.models.padic import PrimeContext


def to_fraction(value) -> Fraction:
    """sympy Rational (or int) to Fraction"""
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


@pytest.fixture
def ctx5():
    return PrimeContext(5, 8)


@pytest.fixture
def ctx7():
    return PrimeContext(7, 8)


@pytest.fixture
def ctx13():
    return PrimeContext(13, 8)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def small_primes():
    return [int(p) for p in sympy.primerange(5, 60)]


@pytest.fixture
def recording_bus():
    """An EventBus that also keeps every published event"""
    bus = EventBus()
    bus.seen = []
    original = bus.publish

    def publish(event_type, data, source_module=None):
        bus.seen.append((event_type, data))
        return original(event_type, data, source_module)

    bus.publish = publish
    return bus


def random_p_integral(rng: random.Random, p: int, num_max: int = 30, den_max: int = 12) -> Fraction:
    while True:
        s = rng.randint(1, den_max)
        if s % p:
            return Fraction(rng.randint(-num_max, num_max), s)
