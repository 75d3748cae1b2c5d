import os

import pytest


@pytest.fixture(autouse=True)
def clean_rma_environment(monkeypatch):
    # RMA_* variables override CLI flags; keep ambient ones out of the suite
    for key in [k for k in os.environ if k.startswith("RMA_")]:
        monkeypatch.delenv(key)
