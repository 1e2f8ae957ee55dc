import numpy as np
import pytest
from hypothesis import given, strategies as st

from mattokit.laurent import (
    GammaStructure,
    MatLaurent,
    VecLaurent,
    eval_disk,
    fourier_truncate,
    ip_hs,
    ip_vec,
    lapply,
    lgamma,
    lmul,
    lreflect,
    lstar,
    ltilde,
)

from conftest import mat_laurents, rand_mat, rand_vec

E12 = np.array([[0, 1], [0, 0]], dtype=complex)
CIRCLE = np.exp(2j * np.pi * np.arange(17) / 17)


def test_band_is_trimmed():
    c = np.zeros((5, 2, 2), complex)
    c[2] = np.eye(2)
    F = MatLaurent(c, -2, 2)
    assert F.band == (0, 0)
    assert MatLaurent(np.zeros((3, 1, 1)), 0, 1).is_zero


def test_coefficients_outside_band_are_zero():
    F = MatLaurent.monomial(E12, 2)
    assert np.all(F.coeff(5) == 0)
    assert np.all(F.coeff(2) == E12)


def test_immutable():
    F = MatLaurent.identity(2)
    with pytest.raises(ValueError):
        F.coeffs[0, 0, 0] = 3


def test_lgamma_example():
    # J = I, F = i E12 z: (F_Γ)_{-1} = conj(i E12) = -i E12
    F = MatLaurent.monomial(1j * E12, 1)
    got = lgamma(F, GammaStructure.identity(2))
    assert got == MatLaurent.monomial(-1j * E12, -1)


def test_lgamma_literal_is_not_tilde_for_symmetric_f():
    # F = z I is Gamma-symmetric; the pointwise form gives conj z, while F~ = z
    F = MatLaurent.monomial(np.eye(2), 1)
    g = GammaStructure.identity(2)
    assert lgamma(F, g) == lstar(F)
    assert lgamma(F, g) != ltilde(F)
    assert lreflect(lgamma(F, g)) == ltilde(F)


def test_fourier_truncate_blaschke():
    # b(z) = (z - a)/(1 - conj(a) z), a = 0.5: b0 = -a, b_n = conj(a)^(n-1) (1 - |a|^2)
    a = 0.5
    T = fourier_truncate(lambda z: (z - a) / (1 - a * z), 24)
    F = T.series
    np.testing.assert_allclose(F.coeff(0)[0, 0], -0.5, atol=1e-14)
    np.testing.assert_allclose(F.coeff(1)[0, 0], 0.75, atol=1e-14)
    np.testing.assert_allclose(F.coeff(2)[0, 0], 0.375, atol=1e-14)
    np.testing.assert_allclose(F.coeff(-1)[0, 0], 0, atol=1e-14)
    assert T.tail < 1e-6


def test_eval_disk_rejects_boundary_and_coanalytic():
    F = MatLaurent.monomial(np.eye(1), 1)
    with pytest.raises(ValueError):
        eval_disk(F, 1.0)
    with pytest.raises(ValueError):
        eval_disk(lstar(F), 0.3)
    np.testing.assert_allclose(eval_disk(F, 0.3), [[0.3]])


def test_dimension_mismatch():
    with pytest.raises(ValueError):
        lmul(MatLaurent.identity(1), MatLaurent.identity(2))


@given(mat_laurents())
def test_lstar_involution(F):
    assert lstar(lstar(F)) == F


@given(mat_laurents())
def test_ltilde_involution(F):
    assert ltilde(ltilde(F)) == F


@given(mat_laurents(d=2))
def test_lgamma_involution_complex_j(F):
    # any symmetric unitary J gives Γ^2 = I
    U = np.array([[1, 1j], [1j, 1]]) / np.sqrt(2)
    g = GammaStructure(U)
    assert lgamma(lgamma(F, g), g).distance(F) < 1e-14


@given(mat_laurents(), st.integers(0, 2**32 - 1))
def test_lmul_matches_pointwise_product(F, seed):
    G = rand_mat(np.random.default_rng(seed), -2, 2, F.dim)
    np.testing.assert_allclose(lmul(F, G)(CIRCLE), F(CIRCLE) @ G(CIRCLE), atol=1e-11)


@given(mat_laurents(), st.integers(0, 2**32 - 1))
def test_star_reverses_products(F, seed):
    G = rand_mat(np.random.default_rng(seed), -1, 2, F.dim)
    assert lstar(lmul(F, G)).distance(lmul(lstar(G), lstar(F))) < 1e-11


@given(mat_laurents())
def test_star_is_pointwise_adjoint(F):
    np.testing.assert_allclose(lstar(F)(CIRCLE), np.conj(np.swapaxes(F(CIRCLE), 1, 2)), atol=1e-12)


@given(mat_laurents(), st.integers(0, 2**32 - 1))
def test_parseval(F, seed):
    # <F, G> equals the circle average of tr(G* F)
    G = rand_mat(np.random.default_rng(seed), -3, 3, F.dim)
    z = np.exp(2j * np.pi * np.arange(64) / 64)
    avg = np.mean(np.einsum("kji,kji->k", np.conj(G(z)), F(z)))
    assert abs(ip_hs(F, G) - avg) < 1e-11


@given(mat_laurents(), st.integers(0, 2**32 - 1))
def test_multiplication_adjoint(F, seed):
    rng = np.random.default_rng(seed)
    f, g = rand_vec(rng, -2, 3, F.dim), rand_vec(rng, -4, 1, F.dim)
    assert abs(ip_vec(lapply(F, f), g) - ip_vec(f, lapply(lstar(F), g))) < 1e-11


def test_vec_truncate_and_dense():
    f = VecLaurent(np.arange(8, dtype=complex).reshape(4, 2), -1, 2)
    t = f.truncate(0, 1)
    assert t.band == (0, 1)
    np.testing.assert_array_equal(t.coeff(0), [2, 3])
    assert f.dense(-3, 3).shape == (7, 2)
