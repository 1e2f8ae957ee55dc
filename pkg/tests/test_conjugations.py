import numpy as np
import pytest
from hypothesis import given, strategies as st

from mattokit.conjugations import (
    AntilinearOperator,
    HypothesisError,
    NotIntertwiningError,
    block_factorization,
    c_lambda_psi,
    c_theta,
    canonical_criterion,
    compose,
    extract_multiplier,
    is_conjugation_on,
    j_star,
    j_tilde,
    tau_theta,
)
from mattokit.inner import (
    STRATEGIES,
    identity_inner,
    inner_product_chain,
    nonsymmetric_factor,
    potapov_factor,
    random_commuting_pair,
)
from mattokit.laurent import GammaStructure, MatLaurent, lmul
from mattokit.window import InsufficientWindowError, Window, model_basis, mult_op


def zn(n):
    return inner_product_chain([potapov_factor(np.eye(1)) for _ in range(n)])


def setup(seed, d, strategy="powers-of-common-factor", degrees=(1, 2)):
    pair = random_commuting_pair(seed, d, degrees, strategy)
    theta = pair.lam @ pair.psi
    W = Window(3 * theta.degree + 4, d)
    return pair.lam, pair.psi, theta, W


def test_j_operators_are_involutions():
    W = Window(3, 2)
    U = np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)
    for g in (None, GammaStructure(U)):
        for J in (j_tilde(W, g), j_star(W, g)):
            np.testing.assert_allclose(J.matrix @ np.conj(J.matrix), np.eye(W.D), atol=1e-15)


def test_compose_rules(rng):
    W = Window(2, 1)
    A = rng.standard_normal((W.D, W.D)) + 1j * rng.standard_normal((W.D, W.D))
    B = rng.standard_normal((W.D, W.D)) + 1j * rng.standard_normal((W.D, W.D))
    v = rng.standard_normal(W.D) + 1j * rng.standard_normal(W.D)
    a, b = AntilinearOperator(W, A), AntilinearOperator(W, B)
    both = compose(a, b)
    np.testing.assert_allclose(both.matrix @ v, a.apply(b.apply(v)), atol=1e-12)
    lin = mult_op(MatLaurent.monomial(np.eye(1), 1), W)
    mixed = compose(a, lin)
    assert isinstance(mixed, AntilinearOperator)
    np.testing.assert_allclose(mixed.apply(v), a.apply(lin.matrix @ v), atol=1e-12)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_scalar_c_theta_flips_basis(n):
    W = Window(3 * n + 2, 1)
    C = c_theta(zn(n), None, W)
    for k in range(n):
        e = np.zeros(W.D)
        e[W.index(k, 0)] = 1
        out = C.apply(e)
        want = np.zeros(W.D)
        want[W.index(n - 1 - k, 0)] = 1
        np.testing.assert_allclose(out, want, atol=1e-15)


@pytest.mark.parametrize("n", [2, 4])
def test_scalar_tau_flips_basis(n):
    # for θ = z^n, τ_θ f = z^(n-1) f(conj z): z^k -> z^(n-1-k), linearly
    W = Window(3 * n + 2, 1)
    T = tau_theta(zn(n), W).matrix
    for k in range(n):
        e = np.zeros(W.D, complex)
        e[W.index(k, 0)] = 1j
        want = np.zeros(W.D, complex)
        want[W.index(n - 1 - k, 0)] = 1j
        np.testing.assert_allclose(T @ e, want, atol=1e-15)


@given(st.integers(0, 2**20), st.sampled_from(STRATEGIES), st.integers(1, 3))
def test_c_theta_is_conjugation(seed, strategy, d):
    lam, psi, theta, W = setup(seed, d, strategy)
    V = model_basis(theta, W)
    rep = is_conjugation_on(c_theta(theta, None, W), V)
    assert rep.ok(1e-10)
    assert max(canonical_criterion(c_theta(theta, None, W), V)) < 1e-10


def test_c_theta_fails_for_nonsymmetric_theta():
    theta = nonsymmetric_factor()
    W = Window(6, 2)
    rep = is_conjugation_on(c_theta(theta, None, W), model_basis(theta, W))
    assert rep.involution >= 1e-2


def test_c_theta_needs_room():
    with pytest.raises(InsufficientWindowError):
        c_theta(zn(3), None, Window(2, 1))


@given(st.integers(0, 2**20), st.sampled_from(STRATEGIES), st.integers(1, 3))
def test_c_lambda_psi_is_conjugation(seed, strategy, d):
    lam, psi, theta, W = setup(seed, d, strategy)
    V = model_basis(theta, W)
    assert is_conjugation_on(c_lambda_psi(lam, psi, None, W), V).ok(1e-10)


def test_c_lambda_psi_degenerate_cases():
    lam, psi, theta, W = setup(6, 2)
    V = model_basis(theta, W).matrix
    one = identity_inner(2)
    # K_I = {0}: the block construction reduces to C_Θ
    for C in (c_lambda_psi(theta, one, None, W), c_lambda_psi(one, theta, None, W)):
        diff = (C.matrix - c_theta(theta, None, W).matrix) @ np.conj(V)
        assert np.linalg.norm(diff, 2) < 1e-12


def test_c_lambda_psi_checks_hypotheses():
    W = Window(8, 2)
    B = nonsymmetric_factor()
    with pytest.raises(HypothesisError):
        c_lambda_psi(B, B, None, W)
    a = potapov_factor(np.diag([1.0, 0.0]))
    Q = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
    b = potapov_factor(Q @ np.diag([1.0, 0.0]) @ Q)
    with pytest.raises(HypothesisError):
        c_lambda_psi(a, b, None, W)


@pytest.mark.parametrize("seed,d", [(1, 1), (2, 2), (3, 3)])
def test_extract_multiplier_returns_zbar_theta(seed, d):
    lam, psi, theta, W = setup(seed, d)
    m = extract_multiplier(c_theta(theta, None, W), None, W)
    want = lmul(MatLaurent.monomial(np.eye(d), -1), theta.expansion)
    assert m.symbol.distance(want) < 1e-12
    assert m.structure_defect < 1e-10 and m.unitarity_defect < 1e-12 and m.gamma_defect < 1e-12


def test_extract_multiplier_rejects_non_intertwining(rng):
    W = Window(5, 1)
    A = rng.standard_normal((W.D, W.D))
    with pytest.raises(NotIntertwiningError):
        extract_multiplier(AntilinearOperator(W, A), None, W)


@pytest.mark.parametrize("strategy", STRATEGIES)
def test_block_factorization(strategy):
    lam, psi, theta, W = setup(8, 2, strategy)
    bf = block_factorization(lam, psi, None, W)
    assert bf.reconstruction_defect < 1e-10
    V = lmul(lmul(lam.expansion, bf.U_prime), lam.expansion)
    assert bf.V.distance(V) < 1e-13
    assert max(bf.certificates.values()) < 1e-10
