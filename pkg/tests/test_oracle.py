import numpy as np
import pytest

from mattokit.conjugations import c_lambda_psi, c_theta, j_star, j_tilde, tau_theta
from mattokit.inner import STRATEGIES, random_commuting_pair
from mattokit.laurent import MatLaurent
from mattokit.operators import hankel, hankel_tilde, matto
from mattokit.oracle import DenseOracle
from mattokit.window import Window, mult_op, proj_model

from conftest import rand_mat


def interior(rng, W, margin):
    v = np.zeros(W.D, complex)
    idx = W.interior(margin)
    v[idx] = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
    return v


def test_too_few_nodes():
    with pytest.raises(ValueError):
        DenseOracle(Window(10, 1), nodes=64)


def test_round_trip_is_identity(rng):
    W = Window(5, 2)
    O = DenseOracle(W)
    v = interior(rng, W, 0)
    c = O.analyze(O.synth(O.lift(v)))
    np.testing.assert_allclose(O.restrict(c), v, atol=1e-13)
    assert O.leak() < 1e-13


def test_shift_on_samples():
    W = Window(3, 1)
    O = DenseOracle(W)
    v = np.zeros(W.D)
    v[W.index(0, 0)] = 1
    out = O.mult(MatLaurent.monomial(np.eye(1), 2), v)
    assert abs(out[W.index(2, 0)] - 1) < 1e-14


@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_oracle_agrees_with_window_operators(strategy, d, rng):
    pair = random_commuting_pair(13, d, (1, 2), strategy)
    lam, psi = pair.lam, pair.psi
    theta = lam @ psi
    W = Window(3 * theta.degree + 8, d)
    O = DenseOracle(W)
    phi = rand_mat(rng, -2, 2, d)
    linear = [
        (mult_op(phi, W), lambda v: O.mult(phi, v)),
        (proj_model(theta, W), lambda v: O.proj_model(theta, v)),
        (tau_theta(theta, W), lambda v: O.tau_theta(theta, v)),
        (hankel(phi, W), lambda v: O.hankel(phi, v)),
        (hankel_tilde(lam.expansion, W), lambda v: O.hankel_tilde(lam, v)),
        (matto(phi, lam, theta, W).full, lambda v: O.matto(phi, lam, theta, v)),
    ]
    anti = [
        (j_tilde(W), O.j_tilde),
        (j_star(W), O.j_star),
        (c_theta(theta, None, W), lambda v: O.c_theta(theta, v)),
        (c_lambda_psi(lam, psi, None, W), lambda v: O.c_lambda_psi(lam, psi, v)),
    ]
    for op, ref in linear:
        v = interior(rng, W, min(op.margin, W.N))
        assert np.abs(op.matrix @ v - ref(v)).max() < 1e-10
    for op, ref in anti:
        v = interior(rng, W, min(op.margin, W.N))
        assert np.abs(op.matrix @ np.conj(v) - ref(v)).max() < 1e-10
