import pytest

from src.validator.data_model import SelfCheckRanges, TwistProfile


@pytest.fixture
def small_ranges():
    return SelfCheckRanges.small()


@pytest.fixture
def high_profile():
    # Q = 3 > g(F) - 1 = 1
    return TwistProfile.default_for(2, 3)


@pytest.fixture
def low_profile():
    # 2Q = 4 < g(F) - 1 = 7
    return TwistProfile.default_for(8, 2)
