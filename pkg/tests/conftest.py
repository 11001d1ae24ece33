from pathlib import Path

import pytest

from nullkan.specfile import parse_spec, to_setup

SPECS = Path(__file__).resolve().parent.parent / "specs"


@pytest.fixture(scope="session")
def specs_dir():
    return SPECS


@pytest.fixture
def idempotent_setup():
    doc = parse_spec((SPECS / "idempotent.spec").read_text())
    return to_setup(doc, "idempotent")
