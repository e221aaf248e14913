"""
A file that contains configuration and utility code pertaining to PyTest
"""

import sys

import pytest
from loguru import logger


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="Run slow Monte Carlo and timing tests")


def pytest_configure(config):
    logger.info("Modifying sys.path...")
    sys.path.insert(0, "src")
    config.addinivalue_line("markers", "slow: long-running Monte Carlo and timing checks")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return

    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)
