import pathlib

import pytest

import m3cube


@pytest.fixture(scope="session")
def catalog() -> pathlib.Path:
    return pathlib.Path(m3cube.__file__).parent / "catalog"
