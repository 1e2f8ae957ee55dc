import numpy as np
import pytest
from hypothesis import settings, strategies as st

from mattokit.laurent import MatLaurent, VecLaurent

settings.register_profile("default", max_examples=40, deadline=None)
settings.load_profile("default")


def rand_mat(rng, lo, hi, d, scale=1.0):
    n = hi - lo + 1
    c = rng.standard_normal((n, d, d)) + 1j * rng.standard_normal((n, d, d))
    return MatLaurent(scale * c, lo, d)


def rand_vec(rng, lo, hi, d):
    n = hi - lo + 1
    return VecLaurent(rng.standard_normal((n, d)) + 1j * rng.standard_normal((n, d)), lo, d)


@st.composite
def mat_laurents(draw, d=None, lo=-3, hi=3):
    d = draw(st.integers(1, 3)) if d is None else d
    a = draw(st.integers(lo, hi))
    b = draw(st.integers(a, hi))
    seed = draw(st.integers(0, 2**32 - 1))
    return rand_mat(np.random.default_rng(seed), a, b, d)


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
