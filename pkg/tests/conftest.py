from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from satake.fixtures import FIXTURES


@pytest.fixture(params=list(FIXTURES))
def fixture_datum(request):
    return FIXTURES[request.param].datum


def datum(name: str):
    return FIXTURES[name].datum
