from pathlib import Path

import pytest

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"


@pytest.fixture
def data():
    return DATA


@pytest.fixture
def golden():
    return GOLDEN
