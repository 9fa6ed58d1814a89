import logging

import numpy as np
import pytest

from summability.calculus.partitions import BlockPartition


@pytest.fixture(autouse=True)
def reset_package_logger():
    """The CLI detaches the package logger from the root; undo it between tests."""
    yield
    package = logging.getLogger("summability")
    package.handlers.clear()
    package.propagate = True
    package.setLevel(logging.NOTSET)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def example_partition():
    return BlockPartition.parse("1,2|3")
