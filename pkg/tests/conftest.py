from __future__ import annotations

from functools import lru_cache

import pytest

from matsuo.catalog import build_group
from matsuo.spectral import spectrum


@lru_cache(maxsize=None)
def group(name: str):
    return build_group(name)


@lru_cache(maxsize=None)
def group_spectrum(name: str):
    return spectrum(group(name))


@pytest.fixture
def say(capsys):
    """Print one line straight to the terminal, bypassing capture."""

    def emit(line: str) -> None:
        with capsys.disabled():
            print("\n" + line)

    return emit
