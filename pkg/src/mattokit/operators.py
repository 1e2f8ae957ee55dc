"""Truncated Toeplitz operators between model spaces, model shifts, and Hankel operators."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .conjugations import HypothesisError, c_lambda_psi, c_theta, compose
from .inner import InnerFunction, check_gamma_symmetric, product_expansion
from .laurent import GammaStructure, MatLaurent, VecLaurent, lgamma, lmul, lstar
from .window import (
    Frame,
    InsufficientWindowError,
    Window,
    WindowOperator,
    model_basis,
    mult_op,
    proj_halfspace,
    proj_model,
)

__all__ = [
    "Matto",
    "matto",
    "model_shift",
    "hankel",
    "hankel_tilde",
    "symbol_transform",
    "lt_defect",
    "eq412_defect",
    "defect_operators",
    "defect_sides",
]


def _exp(theta) -> MatLaurent:
    return theta.expansion if isinstance(theta, InnerFunction) else theta


def _fit(F: MatLaurent, W: Window):
    if not F.is_zero and (F.lo < -W.N or F.hi > W.N):
        raise InsufficientWindowError(f"symbol band {F.band} exceeds window radius {W.N}")


@dataclass(frozen=True)
class Matto:
    """``A_Φ^{Θ1,Θ2}``: full window matrix ``P_Θ2 M_Φ P_Θ1`` plus its frame compression."""

    full: WindowOperator
    compressed: np.ndarray
    domain: Frame
    codomain: Frame


def matto(phi: MatLaurent, theta1, theta2, W: Window) -> Matto:
    _fit(phi, W)
    P1, P2 = proj_model(theta1, W), proj_model(theta2, W)
    M = mult_op(phi, W)
    full = P2 @ M @ P1
    V1, V2 = model_basis(theta1, W), model_basis(theta2, W)
    comp = V2.matrix.conj().T @ M.matrix @ V1.matrix
    return Matto(full, comp, V1, V2)


def model_shift(theta, W: Window) -> tuple[Matto, Matto]:
    """``(S_Θ, S_Θ*) = (A_z^Θ, A_{conj z}^Θ)``."""
    eye = np.eye(W.d)
    S = matto(MatLaurent.monomial(eye, 1), theta, theta, W)
    Sstar = matto(MatLaurent.monomial(eye, -1), theta, theta, W)
    return S, Sstar


def hankel(phi: MatLaurent, W: Window) -> WindowOperator:
    """``H_Φ f = P_-(Φ f)`` for ``f`` in H^2."""
    _fit(phi, W)
    op = proj_halfspace(W, "-") @ mult_op(phi, W) @ proj_halfspace(W, "+")
    width = 0 if phi.is_zero else phi.hi - phi.lo
    return WindowOperator(W, op.matrix, max(op.margin, width))


def hankel_tilde(psi: MatLaurent, W: Window) -> WindowOperator:
    """``H~_Ψ f = P_+(Ψ f)`` for ``f`` in H^2_-."""
    _fit(psi, W)
    op = proj_halfspace(W, "+") @ mult_op(psi, W) @ proj_halfspace(W, "-")
    width = 0 if psi.is_zero else psi.hi - psi.lo
    return WindowOperator(W, op.matrix, max(op.margin, width))


def symbol_transform(phi: MatLaurent, theta1, theta2, gamma: GammaStructure | None = None,
                     tol: float = 1e-10) -> MatLaurent:
    """Symbol ``Γ Θ2* Φ Θ1 Γ`` of ``C_Θ2 A_Φ^{Θ1,Θ2} C_Θ1``."""
    T1, T2 = _exp(theta1), _exp(theta2)
    gamma = gamma or GammaStructure.identity(phi.dim)
    for name, T in (("Theta1", T1), ("Theta2", T2)):
        g = check_gamma_symmetric(T, gamma)
        if g > tol:
            raise HypothesisError(f"{name} is not Gamma-symmetric (defect {g:.3e})")
    return lgamma(lmul(lmul(lstar(T2), phi), T1), gamma)


def _frame_norm(X: np.ndarray, V: Frame) -> float:
    if V.rank == 0:
        return 0.0
    return float(np.linalg.norm(X @ V.matrix, 2))


def lt_defect(phi: MatLaurent, theta1, theta2, gamma: GammaStructure | None, W: Window) -> float:
    """``||C_Θ2 A_Φ C_Θ1 - A_Ψ||`` on the ``K_Θ1`` frame, ``Ψ = symbol_transform(Φ)``."""
    gamma = gamma or GammaStructure.identity(W.d)
    psi = symbol_transform(phi, theta1, theta2, gamma)
    A = matto(phi, theta1, theta2, W)
    B = matto(psi, theta1, theta2, W)
    C1, C2 = c_theta(theta1, gamma, W), c_theta(theta2, gamma, W)
    lhs = compose(C2, compose(A.full, C1))
    return _frame_norm(lhs.matrix - B.full.matrix, A.domain)


def eq412_defect(phi: MatLaurent, theta, gamma: GammaStructure | None, W: Window) -> float:
    """``||C_Θ A_Φ^Θ C_Θ - A_{Φ*}^Θ||`` on the ``K_Θ`` frame."""
    gamma = gamma or GammaStructure.identity(W.d)
    A = matto(phi, theta, theta, W)
    B = matto(lstar(phi), theta, theta, W)
    C = c_theta(theta, gamma, W)
    lhs = compose(C, compose(A.full, C))
    return _frame_norm(lhs.matrix - B.full.matrix, A.domain)


def defect_operators(phi: MatLaurent, lam, psi, gamma: GammaStructure | None, W: Window):
    """Antilinear matrices of both sides of the commutator-defect identity.

    ``lhs = A_Φ^{Θ,Λ} C_{Λ,Ψ} - C_{Λ,Ψ} A_{Φ*}^{Λ,Θ} P_Λ`` and
    ``rhs = H~_Λ H_Φ C_Θ - H~_Θ H_Φ C_Λ P_Λ`` with ``Θ = ΛΨ``; both act as
    ``f -> M @ conj(f)`` on ``K_Θ``.
    """
    gamma = gamma or GammaStructure.identity(W.d)
    L, S = _exp(lam), _exp(psi)
    _fit(phi, W)
    T = product_expansion(lam, psi)
    PT, PL = proj_model(T, W).matrix, proj_model(L, W).matrix
    MF, MFs = mult_op(phi, W).matrix, mult_op(lstar(phi), W).matrix
    C = c_lambda_psi(L, S, gamma, W).matrix
    lhs = (PL @ MF @ PT) @ C - C @ np.conj(PT @ MFs @ PL)
    H = hankel(phi, W).matrix
    CT, CL = c_theta(T, gamma, W).matrix, c_theta(L, gamma, W).matrix
    rhs = hankel_tilde(L, W).matrix @ H @ CT - hankel_tilde(T, W).matrix @ H @ CL @ np.conj(PL)
    return lhs, rhs


def defect_sides(phi: MatLaurent, lam, psi, gamma: GammaStructure | None, W: Window, f):
    """Both sides evaluated on ``f`` (a window vector, a stack of columns, or a VecLaurent)."""
    lhs, rhs = defect_operators(phi, lam, psi, gamma, W)
    if isinstance(f, VecLaurent):
        v = np.conj(W.to_vec(f))
        return W.from_vec(lhs @ v), W.from_vec(rhs @ v)
    v = np.conj(np.asarray(f))
    return lhs @ v, rhs @ v
