import numpy as np
import pytest
from hypothesis import given, strategies as st

from mattokit.inner import (
    STRATEGIES,
    NotADivisorError,
    PotapovFactor,
    check_gamma_symmetric,
    check_inner,
    commutator_defect,
    diagonal_inner,
    divide,
    identity_inner,
    inner_product_chain,
    nonsymmetric_factor,
    potapov_factor,
    random_commuting_pair,
    symmetric_symbol,
)
from mattokit.laurent import MatLaurent, lgamma, lstar, GammaStructure

Z = np.exp(2j * np.pi * np.arange(31) / 31)


def test_exact_factor_expansion():
    P = np.diag([1.0, 0.0])
    B = potapov_factor(P)
    assert B.expansion.band == (0, 1)
    np.testing.assert_array_equal(B.expansion.coeff(0), np.diag([0, 1]))
    np.testing.assert_array_equal(B.expansion.coeff(1), P)
    assert B.degree == 1 and B.exact


def test_rational_factor_matches_closed_form():
    a = 0.4 + 0.2j
    B = potapov_factor(np.eye(1), a, trunc=40)
    b = (Z - a) / (1 - np.conj(a) * Z)
    np.testing.assert_allclose(B.expansion(Z)[:, 0, 0], b, atol=1e-12)
    np.testing.assert_allclose(B(Z)[:, 0, 0], b, atol=1e-14)
    assert not B.exact


def test_factor_validation():
    with pytest.raises(ValueError):
        PotapovFactor(np.array([[1, 1], [0, 0]]))
    with pytest.raises(ValueError):
        PotapovFactor(np.eye(2), 1.2)
    with pytest.raises(ValueError):
        PotapovFactor(np.eye(2), 0j, 2 * np.eye(2))


def test_chain_degree_and_unitarity():
    e1 = np.diag([1.0, 0.0])
    T = inner_product_chain([potapov_factor(np.eye(2)), potapov_factor(e1)])
    # diag(z^2, z)
    np.testing.assert_allclose(T(0.5), np.diag([0.25, 0.5]))
    assert T.degree == 2
    assert check_inner(T) < 1e-14


def test_nonsymmetric_factor():
    B = nonsymmetric_factor()
    assert check_inner(B) < 1e-14
    assert check_gamma_symmetric(B) > 0.5


@pytest.mark.parametrize("strategy", STRATEGIES)
@pytest.mark.parametrize("d", [1, 2, 3])
def test_random_pair_certificates(strategy, d):
    pair = random_commuting_pair(5, d, (1, 2), strategy)
    cert = pair.certificate
    assert max(cert.values()) < 1e-12
    assert pair.lam.exact and pair.psi.exact


@given(st.integers(0, 2**20), st.sampled_from(STRATEGIES), st.integers(1, 3), st.integers(0, 2), st.integers(0, 2))
def test_pair_properties(seed, strategy, d, k1, k2):
    pair = random_commuting_pair(seed, d, (k1, k2), strategy)
    lam, psi = pair.lam, pair.psi
    assert check_inner(lam) < 1e-12 and check_inner(psi) < 1e-12
    assert check_gamma_symmetric(lam) < 1e-12
    assert commutator_defect(lam, psi) < 1e-12
    # the conjugate-side version of an inner function stays unitary on the circle
    assert check_inner(lgamma(lam.expansion, GammaStructure.identity(d))) < 1e-12


def test_pair_is_seed_deterministic():
    a = random_commuting_pair(9, 2, (1, 2), "powers-of-common-factor")
    b = random_commuting_pair(9, 2, (1, 2), "powers-of-common-factor")
    assert a.lam.expansion == b.lam.expansion
    assert a.psi.expansion == b.psi.expansion


def test_rational_tier_pair():
    pair = random_commuting_pair(2, 2, (1, 1), "simultaneously-diagonal", zero_radius=0.3, trunc=32)
    assert not pair.lam.exact
    assert check_inner(pair.lam) < 1e-12


@given(st.integers(0, 2**20), st.integers(1, 3))
def test_divide_round_trip(seed, d):
    pair = random_commuting_pair(seed, d, (1, 2), "scalar-times-identity")
    theta = pair.lam @ pair.psi
    q = divide(theta, pair.lam)
    assert q.expansion.distance(pair.psi.expansion) < 1e-11


def test_divide_rejects_non_divisor():
    B = potapov_factor(np.eye(1))
    with pytest.raises(NotADivisorError):
        divide(identity_inner(1), B)


def test_diagonal_inner_is_symmetric_for_any_unitary(rng):
    Q, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    F = diagonal_inner(Q, [2, 0, 1])
    assert check_gamma_symmetric(F) < 1e-13
    assert F.degree == 2


def test_symmetric_symbol_commutes(rng):
    pair = random_commuting_pair(4, 3, (1, 2), "simultaneously-diagonal")
    phi = symmetric_symbol(rng, (-2, 2), [pair.lam.expansion, pair.psi.expansion])
    assert check_gamma_symmetric(phi) < 1e-12
    assert commutator_defect(phi, pair.lam) < 1e-12
    # a complex symmetric symbol is not selfadjoint
    assert phi.distance(lstar(phi)) > 1e-3


def test_power_zero_is_identity():
    B = potapov_factor(np.eye(2))
    assert B.power(0).expansion == MatLaurent.identity(2)
