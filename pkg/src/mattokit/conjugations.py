"""Antilinear operators on the window and the conjugations built from them.

An :class:`AntilinearOperator` acts as ``f -> M @ conj(f)`` on window
coordinates. In that form composition is plain matrix algebra, and an
operator is a conjugation on a subspace exactly when its compression there is
a symmetric unitary matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .inner import (
    InnerFunction,
    check_gamma_symmetric,
    commutator_defect,
    product_expansion,
    unitarity_defect,
)
from .laurent import GammaStructure, MatLaurent, VecLaurent, lmul, ltilde
from .window import (
    Frame,
    InsufficientWindowError,
    Window,
    WindowOperator,
    model_basis,
    mult_op,
    proj_model,
    shift_op,
)

__all__ = [
    "AntilinearOperator",
    "ConjugationReport",
    "Multiplier",
    "BlockFactorization",
    "HypothesisError",
    "NotIntertwiningError",
    "NotMultiplicationError",
    "j_tilde",
    "j_star",
    "c_theta",
    "tau_theta",
    "c_lambda_psi",
    "is_conjugation_on",
    "canonical_criterion",
    "extract_multiplier",
    "block_factorization",
    "compose",
    "reflection",
]

HYPOTHESIS_TOL = 1e-10


class HypothesisError(ValueError):
    pass


class NotIntertwiningError(ValueError):
    pass


class NotMultiplicationError(ValueError):
    pass


@dataclass(frozen=True)
class AntilinearOperator:
    window: Window
    matrix: np.ndarray
    margin: int = 0

    def apply(self, f):
        if isinstance(f, VecLaurent):
            W = self.window
            return W.from_vec(self.matrix @ np.conj(W.to_vec(f)))
        return self.matrix @ np.conj(f)

    __call__ = apply

    def __add__(self, other: "AntilinearOperator") -> "AntilinearOperator":
        if not isinstance(other, AntilinearOperator) or other.window != self.window:
            raise ValueError("can only add antilinear operators on the same window")
        return AntilinearOperator(self.window, self.matrix + other.matrix, max(self.margin, other.margin))

    def __sub__(self, other: "AntilinearOperator") -> "AntilinearOperator":
        return self + AntilinearOperator(other.window, -other.matrix, other.margin)


def compose(first, second):
    """``first ∘ second`` (``second`` is applied first).

    Two antilinear factors give a linear operator with matrix
    ``M1 @ conj(M2)``; one antilinear factor gives an antilinear result.
    """
    if first.window != second.window:
        raise ValueError(f"window mismatch: {first.window} vs {second.window}")
    W, m = first.window, first.margin + second.margin
    a1, a2 = isinstance(first, AntilinearOperator), isinstance(second, AntilinearOperator)
    if a1 and a2:
        return WindowOperator(W, first.matrix @ np.conj(second.matrix), m)
    if a1:
        return AntilinearOperator(W, first.matrix @ np.conj(second.matrix), m)
    if a2:
        return AntilinearOperator(W, first.matrix @ second.matrix, m)
    return WindowOperator(W, first.matrix @ second.matrix, m)


def _gamma(gamma: GammaStructure | None, W: Window) -> GammaStructure:
    gamma = gamma or GammaStructure.identity(W.d)
    if gamma.dim != W.d:
        raise ValueError(f"dimension mismatch: {gamma.dim} vs {W.d}")
    return gamma


def reflection(W: Window) -> WindowOperator:
    """Linear frequency flip ``f(z) -> f(conj z)``."""
    size = 2 * W.N + 1
    return WindowOperator(W, np.kron(np.fliplr(np.eye(size)), np.eye(W.d)).astype(complex), 0)


def j_tilde(W: Window, gamma: GammaStructure | None = None) -> AntilinearOperator:
    """``(J~ f)(z) = Γ(f(z))``: coefficient ``a_n`` moves to ``-n`` as ``Γ(a_n)``."""
    J = _gamma(gamma, W).J
    size = 2 * W.N + 1
    return AntilinearOperator(W, np.kron(np.fliplr(np.eye(size)), J), 0)


def j_star(W: Window, gamma: GammaStructure | None = None) -> AntilinearOperator:
    """``(J* f)(z) = Γ(f(conj z))``: coefficientwise ``a_n -> Γ(a_n)``."""
    J = _gamma(gamma, W).J
    return AntilinearOperator(W, np.kron(np.eye(2 * W.N + 1), J), 0)


def _expansion(theta) -> MatLaurent:
    return theta.expansion if isinstance(theta, InnerFunction) else theta


def c_theta(theta, gamma: GammaStructure | None, W: Window) -> AntilinearOperator:
    """``(C_Θ f)(z) = Θ(z) conj(z) Γ(f(z))``."""
    T = _expansion(theta)
    deg = max(T.hi, 0)
    if W.N < deg + 1:
        raise InsufficientWindowError(f"window radius {W.N} < degree + 1 = {deg + 1}")
    lin = mult_op(T, W).matrix @ shift_op(W, -1).matrix
    return AntilinearOperator(W, lin @ j_tilde(W, gamma).matrix, deg + 1)


def tau_theta(theta, W: Window) -> WindowOperator:
    """``(τ_Θ f)(z) = conj(z) Θ(conj z)* f(conj z)``."""
    T = _expansion(theta)
    deg = max(T.hi, 0)
    if W.N < deg + 1:
        raise InsufficientWindowError(f"window radius {W.N} < degree + 1 = {deg + 1}")
    M = shift_op(W, -1).matrix @ mult_op(ltilde(T), W).matrix @ reflection(W).matrix
    return WindowOperator(W, M, deg + 1)


def _check_pair(lam, psi, gamma, tol):
    for name, F in (("Lambda", lam), ("Psi", psi)):
        g = check_gamma_symmetric(F, gamma)
        if g > tol:
            raise HypothesisError(f"{name} is not Gamma-symmetric (defect {g:.3e})")
    c = commutator_defect(lam, psi)
    if c > tol:
        raise HypothesisError(f"Lambda and Psi do not commute (defect {c:.3e})")


def c_lambda_psi(lam, psi, gamma: GammaStructure | None, W: Window,
                 tol: float = HYPOTHESIS_TOL) -> AntilinearOperator:
    """``C_{Λ,Ψ} = C_Λ ⊕ Λ C_Ψ Λ*`` on ``K_Θ = K_Λ ⊕ Λ K_Ψ``, zero off ``K_Θ``."""
    gamma = _gamma(gamma, W)
    L, S = _expansion(lam), _expansion(psi)
    _check_pair(L, S, gamma, tol)
    T = product_expansion(lam, psi)
    PT, PL = proj_model(T, W), proj_model(L, W)
    ML = mult_op(L, W).matrix
    CL, CP = c_theta(L, gamma, W), c_theta(S, gamma, W)
    first = CL.matrix @ np.conj(PL.matrix)
    second = ML @ CP.matrix @ np.conj(ML.conj().T @ (PT.matrix - PL.matrix))
    margin = PT.margin + 2 * max(L.hi, 0) + CP.margin
    return AntilinearOperator(W, first + second, margin)


class ConjugationReport(NamedTuple):
    isometry: float
    involution: float
    invariance: float

    def ok(self, tol: float = 1e-10) -> bool:
        return max(self) <= tol


def _frame_matrix(V) -> np.ndarray:
    return V.matrix if isinstance(V, Frame) else np.asarray(V)


def is_conjugation_on(C: AntilinearOperator, V) -> ConjugationReport:
    """Isometry, involution and invariance defects of ``C`` on ``span(V)``."""
    V = _frame_matrix(V)
    if V.shape[1] == 0:
        return ConjugationReport(0.0, 0.0, 0.0)
    B = C.matrix @ np.conj(V)
    s = np.linalg.svd(B, compute_uv=False)
    isometry = float(np.max(np.abs(s - 1)))
    involution = float(np.linalg.norm(C.matrix @ np.conj(B) - V, 2))
    invariance = float(np.linalg.norm(B - V @ (V.conj().T @ B), 2))
    return ConjugationReport(isometry, involution, invariance)


def canonical_criterion(C: AntilinearOperator, V) -> tuple[float, float, float]:
    """(unitarity, symmetry, invariance) defects of the compressed matrix ``V* M conj(V)``."""
    V = _frame_matrix(V)
    if V.shape[1] == 0:
        return 0.0, 0.0, 0.0
    B = C.matrix @ np.conj(V)
    MV = V.conj().T @ B
    r = MV.shape[0]
    unitary = float(np.linalg.norm(MV @ MV.conj().T - np.eye(r), 2))
    symmetric = float(np.linalg.norm(MV - MV.T, 2))
    invariance = float(np.linalg.norm(B - V @ MV, 2))
    return unitary, symmetric, invariance


class Multiplier(NamedTuple):
    symbol: MatLaurent
    intertwining_defect: float
    structure_defect: float
    unitarity_defect: float
    gamma_defect: float


def _chop(F: MatLaurent, rel: float = 1e-14) -> MatLaurent:
    if F.is_zero:
        return F
    scale = max(F.norm(), 1.0)
    kept = {n: A for n, A in F.as_dict().items() if np.linalg.norm(A, 2) > rel * scale}
    return MatLaurent.from_dict(kept, F.dim)


def extract_multiplier(C: AntilinearOperator, gamma: GammaStructure | None, W: Window,
                       tol: float = 1e-10) -> Multiplier:
    """Symbol ``U`` with ``C = M_U J~`` for an antilinear ``C`` satisfying ``M_z C = C M_{conj z}``."""
    gamma = _gamma(gamma, W)
    cols = W.interior(C.margin + 1)
    if cols.size == 0:
        raise InsufficientWindowError("window too small for the operator margin")
    lhs = shift_op(W, 1).matrix @ C.matrix
    rhs = C.matrix @ np.conj(shift_op(W, -1).matrix)
    inter = float(np.linalg.norm((lhs - rhs)[:, cols], 2))
    if inter > tol:
        raise NotIntertwiningError(f"not intertwining: ||M_z C - C M_zbar|| = {inter:.3e}")
    L = compose(C, j_tilde(W, gamma))
    col0 = L.matrix[:, W.indices(0, 0)].reshape(2 * W.N + 1, W.d, W.d)
    U = _chop(MatLaurent(col0, -W.N, W.d))
    structure = float(np.linalg.norm((L.matrix - mult_op(U, W).matrix)[:, cols], 2))
    if structure > tol:
        raise NotMultiplicationError(f"not a multiplication operator: structure defect {structure:.3e}")
    return Multiplier(U, inter, structure, unitarity_defect(U),
                      check_gamma_symmetric(U, gamma))


class BlockFactorization(NamedTuple):
    U: MatLaurent
    V: MatLaurent
    U_prime: MatLaurent
    reconstruction_defect: float
    certificates: dict


def block_factorization(lam, psi, gamma: GammaStructure | None, W: Window,
                        tol: float = 1e-10) -> BlockFactorization:
    """Symbols ``U, V`` with ``C_{Λ,Ψ} = M_U J~ ⊕ M_V J~``; ``V = Λ U' Λ``."""
    gamma = _gamma(gamma, W)
    L, S = _expansion(lam), _expansion(psi)
    C = c_lambda_psi(L, S, gamma, W, tol)
    U = extract_multiplier(c_theta(L, gamma, W), gamma, W, tol)
    Up = extract_multiplier(c_theta(S, gamma, W), gamma, W, tol)
    V = lmul(lmul(L, Up.symbol), L)
    if V.lo < -W.N or V.hi > W.N:
        raise InsufficientWindowError(f"block symbol band {V.band} exceeds window radius {W.N}")
    T = product_expansion(lam, psi)
    PT, PL = proj_model(T, W).matrix, proj_model(L, W).matrix
    Jt = j_tilde(W, gamma).matrix
    rebuilt = (mult_op(U.symbol, W).matrix @ Jt @ np.conj(PL)
               + mult_op(V, W).matrix @ Jt @ np.conj(PT - PL))
    frame = model_basis(T, W).matrix
    defect = float(np.linalg.norm((rebuilt - C.matrix) @ np.conj(frame), 2)) if frame.size else 0.0
    certs = {
        "U_unitarity": U.unitarity_defect,
        "U_gamma": U.gamma_defect,
        "V_unitarity": unitarity_defect(V),
        "V_gamma": check_gamma_symmetric(V, gamma),
    }
    return BlockFactorization(U.symbol, V, Up.symbol, defect, certs)
