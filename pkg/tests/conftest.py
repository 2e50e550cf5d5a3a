import numpy as np
import pytest

from snyder_kloop import kloop


@pytest.fixture(params=["desitter", "lorentz", "sphere"])
def dec(request):
    return kloop.preset(request.param)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
