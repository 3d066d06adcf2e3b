"""Shared test fixtures and configuration."""

import os

import pytest

# Pin the environment before src.config.settings is imported
os.environ.setdefault("IDXLAB_SEED", "1")
os.environ.setdefault("IDXLAB_TRIALS", "4")
os.environ.setdefault("IDXLAB_LOG_LEVEL", "WARNING")
os.environ.pop("IDXLAB_MAX_DEGREE", None)

from src.algebra.fields import make_extension, make_prime_field  # noqa: E402


@pytest.fixture
def F2():
    return make_prime_field(2)


@pytest.fixture
def F3():
    return make_prime_field(3)


@pytest.fixture
def F5():
    return make_prime_field(5)


@pytest.fixture
def F4():
    return make_extension(make_prime_field(2), 2)


@pytest.fixture
def F9():
    return make_extension(make_prime_field(3), 2)
