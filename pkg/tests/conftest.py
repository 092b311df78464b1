import numpy as np
import pytest

from toy_models import BanditModel, GaussianModel, TableModel


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def gaussian_model():
    return GaussianModel()


@pytest.fixture
def table_model():
    return TableModel(
        transitions=[[1, 2], [2, 0], [0, 1]],
        rewards=[[0.0, 1.0], [2.0, 0.0], [0.0, 5.0]],
    )


@pytest.fixture
def bandit_model():
    return BanditModel()
