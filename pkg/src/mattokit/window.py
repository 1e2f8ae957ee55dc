"""Finite sections of L^2(C^d): the truncated Fourier window and operators on it.

A window of radius ``N`` keeps the frequencies ``-N..N``; basis vector
``(n, i)`` sits at index ``(n + N) * d + i``. Every :class:`WindowOperator`
records a ``margin``: applied to a vector whose band lies in
``[-N + margin, N - margin]`` it agrees exactly with the untruncated operator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

import numpy as np
from scipy.linalg import subspace_angles

from .inner import InnerFunction, product_expansion
from .laurent import MatLaurent, VecLaurent

__all__ = [
    "Window",
    "WindowOperator",
    "Frame",
    "InsufficientWindowError",
    "OutsideMarginError",
    "NotInModelSpaceError",
    "proj_halfspace",
    "mult_op",
    "shift_op",
    "proj_model",
    "model_basis",
    "kernel",
    "kernel_tilde",
    "kernel_tail_bound",
    "decomp_split",
    "max_principal_angle",
    "RANK_TOL",
]

RANK_TOL = 1e-10
MAX_KERNEL_RADIUS = 0.9


class InsufficientWindowError(ValueError):
    pass


class OutsideMarginError(ValueError):
    pass


class NotInModelSpaceError(ValueError):
    pass


@dataclass(frozen=True)
class Window:
    N: int
    d: int

    def __post_init__(self):
        if self.N < 0 or self.d < 1:
            raise ValueError(f"invalid window N={self.N}, d={self.d}")

    @property
    def D(self) -> int:
        return (2 * self.N + 1) * self.d

    def index(self, n: int, i: int) -> int:
        if abs(n) > self.N or not 0 <= i < self.d:
            raise IndexError(f"({n}, {i}) outside window")
        return (n + self.N) * self.d + i

    @property
    def freqs(self) -> np.ndarray:
        """Frequency of every basis index."""
        return np.repeat(np.arange(-self.N, self.N + 1), self.d)

    def indices(self, lo: int, hi: int) -> np.ndarray:
        """Basis indices with frequency in ``[lo, hi]`` (clipped to the window)."""
        lo, hi = max(lo, -self.N), min(hi, self.N)
        if lo > hi:
            return np.zeros(0, dtype=int)
        return np.arange((lo + self.N) * self.d, (hi + self.N + 1) * self.d)

    def interior(self, margin: int) -> np.ndarray:
        return self.indices(-self.N + margin, self.N - margin)

    def to_vec(self, f: VecLaurent) -> np.ndarray:
        if f.dim != self.d:
            raise ValueError(f"dimension mismatch: {f.dim} vs {self.d}")
        if not f.is_zero and (f.lo < -self.N or f.hi > self.N):
            raise OutsideMarginError(f"band {f.band} does not fit window radius {self.N}")
        return f.dense(-self.N, self.N).reshape(-1)

    def from_vec(self, v: np.ndarray) -> VecLaurent:
        return VecLaurent(np.asarray(v).reshape(2 * self.N + 1, self.d), -self.N, self.d)

    def band_of(self, v: np.ndarray, tol: float = 0.0) -> tuple[int, int] | None:
        blocks = np.abs(np.asarray(v).reshape(2 * self.N + 1, self.d)).max(axis=1)
        nz = np.nonzero(blocks > tol)[0]
        if nz.size == 0:
            return None
        return int(nz[0] - self.N), int(nz[-1] - self.N)


@dataclass(frozen=True)
class WindowOperator:
    """A linear operator on the window, stored as a dense ``D x D`` matrix."""

    window: Window
    matrix: np.ndarray
    margin: int = 0

    def _same(self, other: "WindowOperator"):
        if self.window != other.window:
            raise ValueError(f"window mismatch: {self.window} vs {other.window}")

    def __matmul__(self, other):
        if isinstance(other, WindowOperator):
            self._same(other)
            return WindowOperator(self.window, self.matrix @ other.matrix, self.margin + other.margin)
        if isinstance(other, VecLaurent):
            return self.apply(other)
        return NotImplemented

    def __add__(self, other: "WindowOperator") -> "WindowOperator":
        self._same(other)
        return WindowOperator(self.window, self.matrix + other.matrix, max(self.margin, other.margin))

    def __sub__(self, other: "WindowOperator") -> "WindowOperator":
        self._same(other)
        return WindowOperator(self.window, self.matrix - other.matrix, max(self.margin, other.margin))

    def __mul__(self, s) -> "WindowOperator":
        return WindowOperator(self.window, self.matrix * s, self.margin)

    __rmul__ = __mul__

    def adjoint(self) -> "WindowOperator":
        return WindowOperator(self.window, self.matrix.conj().T, self.margin)

    def apply(self, f: VecLaurent) -> VecLaurent:
        """Apply to ``f``; refuses inputs outside the exactness region."""
        W = self.window
        if not f.is_zero and (f.lo < -W.N + self.margin or f.hi > W.N - self.margin):
            raise OutsideMarginError(
                f"band {f.band} outside exactness region [{-W.N + self.margin}, {W.N - self.margin}]"
            )
        return W.from_vec(self.matrix @ W.to_vec(f))


@dataclass(frozen=True)
class Frame:
    """Orthonormal frame of a subspace of the window, columns of ``matrix``."""

    window: Window
    matrix: np.ndarray

    @property
    def rank(self) -> int:
        return self.matrix.shape[1]

    def __len__(self) -> int:
        return self.rank

    def __iter__(self) -> Iterator[VecLaurent]:
        for k in range(self.rank):
            yield self.window.from_vec(self.matrix[:, k])

    def projector(self) -> np.ndarray:
        return self.matrix @ self.matrix.conj().T


def proj_halfspace(W: Window, sign: str | int) -> WindowOperator:
    """``P_+`` (keep ``n >= 0``) or ``P_-`` (keep ``n < 0``)."""
    if sign in ("+", 1, +1):
        keep = W.freqs >= 0
    elif sign in ("-", -1):
        keep = W.freqs < 0
    else:
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")
    return WindowOperator(W, np.diag(keep.astype(complex)), 0)


def mult_op(F: MatLaurent, W: Window) -> WindowOperator:
    """Block-Toeplitz finite section of ``M_F``."""
    if F.dim != W.d:
        raise ValueError(f"dimension mismatch: {F.dim} vs {W.d}")
    if F.is_zero:
        return WindowOperator(W, np.zeros((W.D, W.D), complex), 0)
    if F.lo < -W.N or F.hi > W.N:
        raise InsufficientWindowError(f"symbol band {F.band} exceeds window radius {W.N}")
    size = 2 * W.N + 1
    M = np.zeros((W.D, W.D), complex)
    for k, A in F.as_dict().items():
        M += np.kron(np.eye(size, k=-k), A)
    return WindowOperator(W, M, max(abs(F.lo), abs(F.hi)))


def shift_op(W: Window, k: int) -> WindowOperator:
    """``M_{z^k}``."""
    return mult_op(MatLaurent.monomial(np.eye(W.d), k), W)


def _expansion(theta) -> MatLaurent:
    return theta.expansion if isinstance(theta, InnerFunction) else theta


def proj_model(theta, W: Window) -> WindowOperator:
    """``P_Θ = P_+ - M_Θ P_+ M_Θ*`` on the window."""
    T = _expansion(theta)
    deg = max(T.hi, 0)
    if W.N < 2 * deg:
        raise InsufficientWindowError(f"window radius {W.N} < 2 * degree {deg}")
    Pp = proj_halfspace(W, "+")
    MT = mult_op(T, W)
    P = Pp.matrix - MT.matrix @ Pp.matrix @ MT.matrix.conj().T
    return WindowOperator(W, P, 2 * deg)


def model_basis(theta, W: Window, tol: float = RANK_TOL) -> Frame:
    """Orthonormal frame of ``K_Θ`` from the range of ``P_Θ`` on analytic interior columns."""
    P = proj_model(theta, W)
    cols = W.indices(0, W.N - P.margin)
    A = P.matrix[:, cols]
    if A.size == 0:
        return Frame(W, np.zeros((W.D, 0), complex))
    U, s, _ = np.linalg.svd(A, full_matrices=False)
    # P_Θ is a projection: its nonzero singular values are 1, so the scale is floored
    # at 1 and a roundoff-sized P (constant unitary Θ) yields the zero space
    r = int(np.sum(s > tol * max(s[0], 1.0)))
    return Frame(W, U[:, :r])


def kernel_tail_bound(lam: complex, N: int) -> float:
    r = abs(lam)
    return r ** (N + 1) / (1 - r)


def _check_lambda(lam: complex):
    if abs(lam) > MAX_KERNEL_RADIUS:
        raise ValueError(f"|lambda| = {abs(lam):.3f} too close to the circle (> {MAX_KERNEL_RADIUS})")


def _value(theta, lam: complex) -> np.ndarray:
    if isinstance(theta, InnerFunction):
        return np.asarray(theta(complex(lam)))
    return theta(complex(lam))


def kernel(theta, lam: complex, x, W: Window) -> VecLaurent:
    """``k_λ^Θ x = (I - Θ(z) Θ(λ)*) x / (1 - conj(λ) z)`` expanded on ``[0, N]``."""
    _check_lambda(lam)
    T = _expansion(theta)
    x = np.asarray(x, dtype=complex)
    y = _value(theta, lam).conj().T @ x
    num = np.zeros((W.N + 1, W.d), complex)
    num[0] += x
    for n, A in T.as_dict().items():
        if 0 <= n <= W.N:
            num[n] -= A @ y
    geo = np.conj(lam) ** np.arange(W.N + 1)
    out = np.zeros_like(num)
    for n in range(W.N + 1):
        out[n] = geo[: n + 1][::-1] @ num[: n + 1]
    return VecLaurent(out, 0, W.d)


def kernel_tilde(theta, lam: complex, x, W: Window) -> VecLaurent:
    """Difference quotient ``(Θ(z) - Θ(λ)) x / (z - λ)``.

    Coefficient ``j`` is ``sum_{n > j} Θ_n λ^(n-1-j) x``; on the rational tier
    the sum runs over the truncated expansion.
    """
    _check_lambda(lam)
    T = _expansion(theta)
    x = np.asarray(x, dtype=complex)
    if T.is_zero or T.hi < 1:
        return VecLaurent.zero(W.d)
    hi = min(T.hi, W.N + 1)
    out = np.zeros((hi, W.d), complex)
    for n in range(1, hi + 1):
        v = T.coeff(n) @ x
        for j in range(n):
            out[j] += lam ** (n - 1 - j) * v
    return VecLaurent(out, 0, W.d)


def decomp_split(lam: InnerFunction, psi: InnerFunction, f, W: Window, tol: float = 1e-10):
    """Split ``f`` in ``K_{ΛΨ}`` into ``(P_Λ f, Λ P_Ψ Λ* f)``."""
    T = product_expansion(lam, psi)
    as_laurent = isinstance(f, VecLaurent)
    v = W.to_vec(f) if as_laurent else np.asarray(f, dtype=complex)
    PT = proj_model(T, W).matrix
    residual = np.linalg.norm(PT @ v - v)
    if residual > tol * max(1.0, np.linalg.norm(v)):
        raise NotInModelSpaceError(f"vector is not in K_Theta (projection residual {residual:.3e})")
    PL = proj_model(lam, W).matrix
    ML = mult_op(lam.expansion, W).matrix
    PP = proj_model(psi, W).matrix
    first = PL @ v
    second = ML @ (PP @ (ML.conj().T @ v))
    if as_laurent:
        return W.from_vec(first), W.from_vec(second)
    return first, second


def max_principal_angle(A: np.ndarray, B: np.ndarray) -> float:
    """Largest principal angle between the column spans of ``A`` and ``B``."""
    if A.shape[1] == 0 and B.shape[1] == 0:
        return 0.0
    if A.shape[1] != B.shape[1]:
        return float(np.pi / 2)
    return float(np.max(subspace_angles(A, B)))
