import numpy as np
import pytest

from frontlab import Params


@pytest.fixture
def p_kpp2():
    """Reference point d=alpha=1, mu=-1 at the critical frame speed s*=2."""
    return Params(d=1.0, alpha=1.0, mu=-1.0)


@pytest.fixture
def p_half():
    """Reference point d=alpha=1, mu=-1/2 (unstable absolute spectrum)."""
    return Params(d=1.0, alpha=1.0, mu=-0.5)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)
