"""Shared fixtures: cached prime contexts and a deterministic hypothesis profile."""

from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from pascalchar.core_arith import make_context

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)


@pytest.fixture(scope="session")
def contexts():
    return {p: make_context(p) for p in SMALL_PRIMES}


@pytest.fixture(scope="session")
def ctx37():
    return make_context(37)
