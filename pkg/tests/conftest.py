from pathlib import Path

import pytest

DATA = Path(__file__).parent / "data"


@pytest.fixture
def fixture_dir() -> Path:
    return DATA / "fixture"


@pytest.fixture
def golden() -> dict:
    import json

    return json.loads((DATA / "golden" / "fixture_expected.json").read_text(encoding="utf-8"))
