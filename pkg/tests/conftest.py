import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from lapint.core import corpus


@pytest.fixture(scope="session")
def fns():
    return corpus()
