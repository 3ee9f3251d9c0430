import pytest

from realbott import BottMatrix, example_matrix


@pytest.fixture
def klein():
    return BottMatrix.new(2, [(1, 2)])


@pytest.fixture
def example():
    return example_matrix()
