"""
Shared fixtures: app factory with TestingConfig and a CLI runner
"""
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from config import TestingConfig  # noqa: E402
from main import create_app  # noqa: E402
from sensing.models import CalibrationProfile  # noqa: E402

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"


@pytest.fixture
def app():
    return create_app(TestingConfig)


@pytest.fixture
def runner(app):
    return app.test_cli_runner()


@pytest.fixture
def profile():
    return CalibrationProfile(focal_length_px=600.0, assumed_subject_extent_m=1.6256, camera_id="sfs-front")


@pytest.fixture
def scenario_dir():
    return SCENARIO_DIR
