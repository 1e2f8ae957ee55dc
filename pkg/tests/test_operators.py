import numpy as np
import pytest
from hypothesis import given, strategies as st

from mattokit.conjugations import HypothesisError
from mattokit.inner import (
    STRATEGIES,
    inner_product_chain,
    nonsymmetric_factor,
    potapov_factor,
    random_commuting_pair,
    symmetric_symbol,
)
from mattokit.laurent import MatLaurent, lmul, lstar
from mattokit.operators import (
    defect_operators,
    defect_sides,
    eq412_defect,
    hankel,
    hankel_tilde,
    lt_defect,
    matto,
    model_shift,
    symbol_transform,
)
from mattokit.window import InsufficientWindowError, Window, model_basis

from conftest import rand_mat


def zn(n):
    return inner_product_chain([potapov_factor(np.eye(1)) for _ in range(n)])


def setup(seed, d, strategy="powers-of-common-factor", degrees=(1, 2)):
    pair = random_commuting_pair(seed, d, degrees, strategy)
    theta = pair.lam @ pair.psi
    W = Window(3 * theta.degree + 6, d)
    return pair.lam, pair.psi, theta, W


def unit(W, n):
    e = np.zeros(W.D, complex)
    e[W.index(n, 0)] = 1
    return e


@pytest.mark.parametrize("n", [1, 2, 5])
def test_scalar_model_shift_is_nilpotent_jordan_block(n):
    W = Window(3 * n + 2, 1)
    S, Ss = model_shift(zn(n), W)
    # S_θ z^k = z^(k+1) for k < n-1 and S_θ z^(n-1) = 0 in the basis 1, ..., z^(n-1)
    E = np.stack([unit(W, k) for k in range(n)], axis=1)
    Sc = E.T @ S.full.matrix @ E
    np.testing.assert_allclose(Sc, np.eye(n, k=-1), atol=1e-14)
    np.testing.assert_allclose(E.T @ Ss.full.matrix @ E, np.eye(n, k=1), atol=1e-14)
    assert np.abs(np.linalg.matrix_power(Sc, n)).max() < 1e-14


def test_hankel_of_zbar():
    W = Window(4, 1)
    H = hankel(MatLaurent.monomial(np.eye(1), -1), W).matrix
    np.testing.assert_allclose(H @ unit(W, 0), unit(W, -1))
    for k in range(1, 4):
        assert np.abs(H @ unit(W, k)).max() == 0
    Ht = hankel_tilde(MatLaurent.monomial(np.eye(1), 1), W).matrix
    np.testing.assert_allclose(Ht @ unit(W, -1), unit(W, 0))


def test_hankel_of_analytic_symbol_vanishes(rng):
    W = Window(6, 2)
    assert np.abs(hankel(rand_mat(rng, 0, 3, 2), W).matrix).max() == 0


def test_symbol_must_fit_window():
    with pytest.raises(InsufficientWindowError):
        hankel(MatLaurent.monomial(np.eye(1), 9), Window(4, 1))


@given(st.integers(0, 2**20), st.sampled_from(STRATEGIES), st.integers(1, 3))
def test_matto_adjoint(seed, strategy, d):
    lam, psi, theta, W = setup(seed, d, strategy)
    phi = rand_mat(np.random.default_rng(seed), -2, 2, d)
    A = matto(phi, lam, theta, W)
    B = matto(lstar(phi), theta, lam, W)
    assert np.abs(A.compressed.conj().T - B.compressed).max() < 1e-11


@given(st.integers(0, 2**20), st.sampled_from(STRATEGIES), st.integers(1, 3))
def test_hankel_factorization(seed, strategy, d):
    lam, psi, theta, W = setup(seed, d, strategy)
    phi = rand_mat(np.random.default_rng(seed), -2, 2, d)
    T = theta.expansion
    W = Window(3 * theta.degree + 8, d)
    lhs = hankel_tilde(T, W).matrix @ hankel(lmul(lstar(T), phi), W).matrix
    V = model_basis(theta, W).matrix
    assert np.linalg.norm((lhs - matto(phi, theta, theta, W).full.matrix) @ V, 2) < 1e-10


@given(st.integers(0, 2**20), st.sampled_from(STRATEGIES), st.integers(1, 3))
def test_lt_identity(seed, strategy, d):
    lam, psi, theta, W = setup(seed, d, strategy)
    phi = rand_mat(np.random.default_rng(seed), -2, 2, d)
    W = Window(3 * theta.degree + 10, d)
    assert lt_defect(phi, lam, theta, None, W) < 1e-10


def test_symbol_transform_needs_symmetric_theta():
    B = nonsymmetric_factor()
    with pytest.raises(HypothesisError):
        symbol_transform(MatLaurent.identity(2), B, B)


@given(st.integers(0, 2**20), st.integers(0, 3))
def test_eq412_scalar_every_symbol(seed, n):
    rng = np.random.default_rng(seed)
    pair = random_commuting_pair(seed, 1, (1, n), "scalar-times-identity")
    theta = pair.lam @ pair.psi
    phi = rand_mat(rng, -2, 2, 1)
    assert eq412_defect(phi, theta, None, Window(3 * theta.degree + 6, 1)) < 1e-10


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_eq412_symmetric_commuting_symbol(strategy, rng):
    lam, psi, theta, W = setup(4, 3, strategy)
    phi = symmetric_symbol(rng, (-2, 2), [lam.expansion, psi.expansion])
    assert eq412_defect(phi, theta, None, W) < 1e-10


def test_eq412_counterexample():
    # Θ = diag(z^2, z), Φ = E12: C A C picks up the wrong block
    e1 = np.diag([1.0, 0.0])
    theta = inner_product_chain([potapov_factor(np.eye(2)), potapov_factor(e1)])
    phi = MatLaurent.constant(np.array([[0, 1], [0, 0]], dtype=complex))
    assert eq412_defect(phi, theta, None, Window(8, 2)) >= 1e-3


@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_defect_identity(strategy, d, rng):
    lam, psi, theta, W = setup(2, d, strategy)
    W = Window(3 * theta.degree + 10, d)
    phi = symmetric_symbol(rng, (-2, 2), [lam.expansion, psi.expansion])
    lhs, rhs = defect_operators(phi, lam, psi, None, W)
    V = model_basis(theta, W).matrix
    assert np.linalg.norm((lhs - rhs) @ np.conj(V), 2) < 1e-9


def test_defect_identity_scalar_general_symbol(rng):
    lam, psi, theta, W = setup(5, 1, "scalar-times-identity")
    W = Window(3 * theta.degree + 10, 1)
    phi = rand_mat(rng, -2, 2, 1)
    V = model_basis(theta, W)
    for f in V:
        a, b = defect_sides(phi, lam, psi, None, W, f)
        assert np.abs(W.to_vec(a) - W.to_vec(b)).max() < 1e-10
