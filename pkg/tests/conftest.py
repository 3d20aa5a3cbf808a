# tests/conftest.py

import random

import pytest

from modules.core import config
from modules.core.serialization import save_tensor


@pytest.fixture
def rng():
    return random.Random(config.default_seed)


@pytest.fixture
def tensor_file(tmp_path):
    """Write a tensor into tmp_path and return the path."""

    def write(T, name="tensor.json"):
        return save_tensor(T, str(tmp_path / name))

    return write
