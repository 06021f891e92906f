"""
Pytest configuration and fixtures for orbitforge tests.
"""

import os
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent / 'src'))

from involution import Involution, parse_involution

GOLDEN_DIR = Path(__file__).parent / 'golden'


def skip_slow():
    """Check whether slow tests were switched off."""
    return os.environ.get("ORBITFORGE_SKIP_SLOW") == "1"


def pytest_configure(config):
    """Register custom markers."""
    config.addinivalue_line(
        "markers",
        "slow: exhaustive or orbit-scale test (skipped with ORBITFORGE_SKIP_SLOW=1)"
    )


def pytest_collection_modifyitems(config, items):
    """Skip slow tests when ORBITFORGE_SKIP_SLOW=1."""
    if not skip_slow():
        return

    skip = pytest.mark.skip(reason="slow test (ORBITFORGE_SKIP_SLOW=1)")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def example1() -> Involution:
    """(1,4)(2,7)(3,6) in S_7"""
    return parse_involution("(1,4)(2,7)(3,6)", 7)


@pytest.fixture
def example2() -> Involution:
    """Longest element of S_6"""
    return Involution.longest(6)


@pytest.fixture
def example3() -> Involution:
    """(1,5)(2,6)(3,4) in S_6"""
    return Involution.subregular(6)


@pytest.fixture
def example4() -> Involution:
    """(1,10)(2,5)(3,7)(4,9)(6,8) in S_10"""
    return parse_involution("(1,10)(2,5)(3,7)(4,9)(6,8)", 10)


@pytest.fixture
def golden():
    """Read a golden file as UTF-8 text"""
    def read(name: str) -> str:
        return (GOLDEN_DIR / name).read_text(encoding='utf-8')
    return read
