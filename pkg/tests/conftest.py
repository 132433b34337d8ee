import json
from pathlib import Path

import pytest

FIXTURES = Path(__file__).resolve().parent.parent / "src" / "skeinlab" / "fixtures"


def load_json(rel):
    return json.loads((FIXTURES / rel).read_text())


@pytest.fixture
def fixtures_dir():
    return FIXTURES
