import os
from pathlib import Path

import pytest

from heaplab import sys_utils

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture(autouse=True)
def quiet_console():
    sys_utils.set_quiet(True)
    yield
    sys_utils.set_quiet(False)


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    monkeypatch.setenv("XDG_CONFIG_HOME", str(tmp_path / "xdg"))
    for name in list(os.environ):
        if name.startswith("HEAPLAB_"):
            monkeypatch.delenv(name)
    yield


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
