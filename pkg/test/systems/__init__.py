import sys

from loguru import logger

TEST_SEED = 20150


def pre_collect_setup():
    """
    Run setup code that must happen before PyTest collects the tests in this
    directory and its subdirectories.

    Pipeline stages log at debug level on every call; tests keep only warnings.
    """
    logger.remove()
    logger.add(sys.stderr, level="WARNING")


pre_collect_setup()
