from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from kmbraid.golden import algebra

settings.register_profile(
    "kmbraid", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("kmbraid")


@pytest.fixture(scope="session")
def sl2():
    return algebra("A1")


@pytest.fixture(scope="session")
def sl3():
    return algebra("A2")


@pytest.fixture(scope="session")
def aff_a1():
    return algebra("affine:A1")


@pytest.fixture(scope="session")
def aff_a2():
    return algebra("affine:A2")
