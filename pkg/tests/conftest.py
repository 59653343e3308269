import pytest

from torfib import BlockedConfiguration, IntegerMatrix


@pytest.fixture
def ex62():
    """The codimension-one pair whose fiber product fails normality."""
    a = BlockedConfiguration.singleton(IntegerMatrix.from_rows([[2, 0, 1], [0, 2, 1]]))
    b = BlockedConfiguration(
        IntegerMatrix.from_rows([[0, 2, 0, 1], [0, 0, 2, 1], [1, 0, 0, 0]]), (2, 1, 1)
    )
    c = BlockedConfiguration(
        IntegerMatrix.from_rows(
            [[4, 0, 0, 0, 1], [0, 4, 0, 0, 1], [0, 0, 4, 0, 1], [0, 0, 0, 4, 1]]
        ),
        (2, 2, 1),
    )
    return a, b, c


@pytest.fixture
def ex63():
    """The four-block configuration taken twice; eight essential generators."""
    a = BlockedConfiguration.singleton(
        IntegerMatrix.from_rows([[1, 1, 1, 1], [1, 1, 0, 0], [1, 0, 1, 0]])
    )
    b = BlockedConfiguration(
        IntegerMatrix.from_rows(
            [
                [1, 1, 1, 1, 1, 1, 1, 1],
                [1, 0, 1, 0, 0, 0, 0, 0],
                [0, 1, 0, 1, 0, 0, 0, 0],
                [0, 0, 0, 0, 1, 0, 1, 0],
                [1, 0, 0, 0, 1, 0, 0, 0],
                [0, 1, 0, 0, 0, 1, 0, 0],
            ]
        ),
        (2, 2, 2, 2),
    )
    return a, b
