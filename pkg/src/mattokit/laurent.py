"""Matrix- and vector-valued Laurent polynomials on the unit circle.

A :class:`MatLaurent` stores the coefficients ``F_n`` of
``F(z) = sum_n F_n z**n`` on a tight integer band ``[lo, hi]``; a
:class:`VecLaurent` does the same for vector coefficients ``a_n``. Values are
immutable and every operation returns a new object, so instances can be shared
freely between threads.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

__all__ = [
    "GammaStructure",
    "MatLaurent",
    "VecLaurent",
    "Truncation",
    "lmul",
    "lapply",
    "lstar",
    "ltilde",
    "lgamma",
    "lreflect",
    "ip_vec",
    "ip_hs",
    "eval_disk",
    "fourier_truncate",
    "quadrature_nodes",
]

_STRUCTURE_TOL = 1e-14


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=complex)
    a.setflags(write=False)
    return a


def _trim(coeffs: np.ndarray, lo: int) -> tuple[np.ndarray, int]:
    nz = [k for k in range(coeffs.shape[0]) if np.any(coeffs[k] != 0)]
    if not nz:
        return coeffs[:0], 0
    return coeffs[nz[0]:nz[-1] + 1], lo + nz[0]


class GammaStructure:
    """Conjugation ``x -> J conj(x)`` on C^d for a symmetric unitary ``J``."""

    __slots__ = ("J",)

    def __init__(self, J):
        J = np.atleast_2d(np.asarray(J, dtype=complex))
        d = J.shape[0]
        if J.shape != (d, d):
            raise ValueError(f"J must be square, got shape {J.shape}")
        if np.linalg.norm(J @ J.conj().T - np.eye(d)) > _STRUCTURE_TOL * max(d, 1) * 10:
            raise ValueError("J is not unitary")
        if np.linalg.norm(J - J.T) > _STRUCTURE_TOL * max(d, 1) * 10:
            raise ValueError("J is not symmetric")
        self.J = _frozen(J)

    @classmethod
    def identity(cls, d: int) -> "GammaStructure":
        return cls(np.eye(d))

    @property
    def dim(self) -> int:
        return self.J.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Apply Γ to a vector (or to the last axis of a stack of vectors)."""
        return np.conj(x) @ self.J.T

    def sandwich(self, M: np.ndarray) -> np.ndarray:
        """Matrix of the linear map ``x -> Γ(M Γ(x))``, i.e. ``J conj(M) conj(J)``."""
        return self.J @ np.conj(M) @ np.conj(self.J)

    def __repr__(self):
        return f"GammaStructure(J={self.J!r})"


class MatLaurent:
    """Laurent polynomial with d x d complex matrix coefficients."""

    __slots__ = ("coeffs", "lo", "dim")

    def __init__(self, coeffs, lo: int = 0, dim: int | None = None):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim == 2 and dim is None:
            c = c[None]
        if c.ndim == 1:
            # scalar coefficients, d = 1
            c = c[:, None, None]
        if dim is None:
            if c.shape[0] == 0:
                raise ValueError("dim is required for an empty coefficient array")
            dim = c.shape[-1]
        c = c.reshape(-1, dim, dim) if c.size else np.zeros((0, dim, dim), complex)
        c, lo = _trim(c, int(lo))
        self.coeffs = _frozen(c)
        self.lo = lo
        self.dim = int(dim)

    # constructors -------------------------------------------------------
    @classmethod
    def zero(cls, d: int) -> "MatLaurent":
        return cls(np.zeros((0, d, d)), 0, d)

    @classmethod
    def constant(cls, A) -> "MatLaurent":
        A = np.atleast_2d(np.asarray(A, dtype=complex))
        return cls(A[None], 0, A.shape[0])

    @classmethod
    def identity(cls, d: int) -> "MatLaurent":
        return cls.constant(np.eye(d))

    @classmethod
    def monomial(cls, A, n: int) -> "MatLaurent":
        """``A z**n`` for a constant matrix ``A``."""
        A = np.atleast_2d(np.asarray(A, dtype=complex))
        return cls(A[None], n, A.shape[0])

    @classmethod
    def from_dict(cls, terms: dict, d: int | None = None) -> "MatLaurent":
        if not terms:
            if d is None:
                raise ValueError("dim is required for an empty term dict")
            return cls.zero(d)
        mats = {int(n): np.atleast_2d(np.asarray(A, dtype=complex)) for n, A in terms.items()}
        d = next(iter(mats.values())).shape[0] if d is None else d
        lo, hi = min(mats), max(mats)
        c = np.zeros((hi - lo + 1, d, d), complex)
        for n, A in mats.items():
            if A.shape != (d, d):
                raise ValueError(f"coefficient at {n} has shape {A.shape}, expected {(d, d)}")
            c[n - lo] = A
        return cls(c, lo, d)

    # band bookkeeping ---------------------------------------------------
    @property
    def hi(self) -> int:
        return self.lo + max(self.coeffs.shape[0], 1) - 1

    @property
    def band(self) -> tuple[int, int]:
        return self.lo, self.hi

    @property
    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def coeff(self, n: int) -> np.ndarray:
        k = n - self.lo
        if self.is_zero or k < 0 or k >= self.coeffs.shape[0]:
            return np.zeros((self.dim, self.dim), complex)
        return self.coeffs[k]

    def as_dict(self) -> dict[int, np.ndarray]:
        return {self.lo + k: self.coeffs[k] for k in range(self.coeffs.shape[0])}

    def dense(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients on ``[lo, hi]`` as an array of shape ``(hi-lo+1, d, d)``."""
        out = np.zeros((hi - lo + 1, self.dim, self.dim), complex)
        for n, A in self.as_dict().items():
            if lo <= n <= hi:
                out[n - lo] = A
        return out

    def analytic_part(self) -> "MatLaurent":
        return MatLaurent(self.dense(0, max(self.hi, 0)), 0, self.dim)

    def truncate(self, lo: int, hi: int) -> "MatLaurent":
        return MatLaurent(self.dense(lo, hi), lo, self.dim)

    def norm(self) -> float:
        """Largest spectral norm of a coefficient (coefficientwise max norm)."""
        if self.is_zero:
            return 0.0
        return float(max(np.linalg.norm(A, 2) for A in self.coeffs))

    # arithmetic ----------------------------------------------------------
    def _check(self, other):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other: "MatLaurent") -> "MatLaurent":
        self._check(other)
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return MatLaurent(self.dense(lo, hi) + other.dense(lo, hi), lo, self.dim)

    def __neg__(self) -> "MatLaurent":
        return MatLaurent(-self.coeffs, self.lo, self.dim)

    def __sub__(self, other: "MatLaurent") -> "MatLaurent":
        return self + (-other)

    def __mul__(self, s) -> "MatLaurent":
        if isinstance(s, MatLaurent):
            return lmul(self, s)
        return MatLaurent(self.coeffs * complex(s), self.lo, self.dim)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, VecLaurent):
            return lapply(self, other)
        return lmul(self, other)

    def __call__(self, z):
        """Evaluate at points ``z`` (anywhere in C minus the origin if lo < 0)."""
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape + (self.dim, self.dim), complex)
        for n, A in self.as_dict().items():
            out += np.multiply.outer(z**n, A)
        return out

    def __eq__(self, other):
        if not isinstance(other, MatLaurent):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.lo == other.lo
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.all(self.coeffs == other.coeffs))
        )

    __hash__ = None

    def distance(self, other: "MatLaurent") -> float:
        return (self - other).norm()

    def __repr__(self):
        return f"MatLaurent(dim={self.dim}, band={self.band}, nterms={self.coeffs.shape[0]})"


class VecLaurent:
    """Laurent polynomial with vector coefficients in C^d (an element of L^2(C^d))."""

    __slots__ = ("coeffs", "lo", "dim")

    def __init__(self, coeffs, lo: int = 0, dim: int | None = None):
        c = np.asarray(coeffs, dtype=complex)
        if c.ndim == 1 and dim is None:
            c = c[None]
        if dim is None:
            if c.shape[0] == 0:
                raise ValueError("dim is required for an empty coefficient array")
            dim = c.shape[-1]
        c = c.reshape(-1, dim) if c.size else np.zeros((0, dim), complex)
        c, lo = _trim(c, int(lo))
        self.coeffs = _frozen(c)
        self.lo = lo
        self.dim = int(dim)

    @classmethod
    def zero(cls, d: int) -> "VecLaurent":
        return cls(np.zeros((0, d)), 0, d)

    @classmethod
    def monomial(cls, x, n: int) -> "VecLaurent":
        x = np.atleast_1d(np.asarray(x, dtype=complex))
        return cls(x[None], n, x.shape[0])

    @classmethod
    def from_dict(cls, terms: dict, d: int | None = None) -> "VecLaurent":
        if not terms:
            if d is None:
                raise ValueError("dim is required for an empty term dict")
            return cls.zero(d)
        vecs = {int(n): np.atleast_1d(np.asarray(x, dtype=complex)) for n, x in terms.items()}
        d = next(iter(vecs.values())).shape[0] if d is None else d
        lo, hi = min(vecs), max(vecs)
        c = np.zeros((hi - lo + 1, d), complex)
        for n, x in vecs.items():
            c[n - lo] = x
        return cls(c, lo, d)

    @property
    def hi(self) -> int:
        return self.lo + max(self.coeffs.shape[0], 1) - 1

    @property
    def band(self) -> tuple[int, int]:
        return self.lo, self.hi

    @property
    def is_zero(self) -> bool:
        return self.coeffs.shape[0] == 0

    def coeff(self, n: int) -> np.ndarray:
        k = n - self.lo
        if self.is_zero or k < 0 or k >= self.coeffs.shape[0]:
            return np.zeros(self.dim, complex)
        return self.coeffs[k]

    def as_dict(self) -> dict[int, np.ndarray]:
        return {self.lo + k: self.coeffs[k] for k in range(self.coeffs.shape[0])}

    def dense(self, lo: int, hi: int) -> np.ndarray:
        out = np.zeros((hi - lo + 1, self.dim), complex)
        for n, x in self.as_dict().items():
            if lo <= n <= hi:
                out[n - lo] = x
        return out

    def truncate(self, lo: int, hi: int) -> "VecLaurent":
        return VecLaurent(self.dense(lo, hi), lo, self.dim)

    def norm(self) -> float:
        return float(np.sqrt(ip_vec(self, self).real))

    def __add__(self, other: "VecLaurent") -> "VecLaurent":
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return VecLaurent(self.dense(lo, hi) + other.dense(lo, hi), lo, self.dim)

    def __neg__(self):
        return VecLaurent(-self.coeffs, self.lo, self.dim)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        return VecLaurent(self.coeffs * complex(s), self.lo, self.dim)

    __rmul__ = __mul__

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.zeros(z.shape + (self.dim,), complex)
        for n, x in self.as_dict().items():
            out += np.multiply.outer(z**n, x)
        return out

    def __eq__(self, other):
        if not isinstance(other, VecLaurent):
            return NotImplemented
        return (
            self.dim == other.dim
            and self.lo == other.lo
            and self.coeffs.shape == other.coeffs.shape
            and bool(np.all(self.coeffs == other.coeffs))
        )

    __hash__ = None

    def __repr__(self):
        return f"VecLaurent(dim={self.dim}, band={self.band}, nterms={self.coeffs.shape[0]})"


def _convolve(A: np.ndarray, B: np.ndarray, spec: str) -> np.ndarray:
    # spec acts on one coefficient of A against a stack of coefficients of B
    ka, kb = A.shape[0], B.shape[0]
    out = np.zeros((ka + kb - 1,) + B.shape[1:2] + B.shape[2:], complex)
    for k in range(ka):
        out[k:k + kb] += np.einsum(spec, A[k], B)
    return out


def lmul(F: MatLaurent, G: MatLaurent) -> MatLaurent:
    """Product ``F G``: ``(FG)_m = sum_k F_k G_{m-k}``."""
    if F.dim != G.dim:
        raise ValueError(f"dimension mismatch: {F.dim} vs {G.dim}")
    if F.is_zero or G.is_zero:
        return MatLaurent.zero(F.dim)
    return MatLaurent(_convolve(F.coeffs, G.coeffs, "ij,tjk->tik"), F.lo + G.lo, F.dim)


def lapply(F: MatLaurent, f: VecLaurent) -> VecLaurent:
    """Multiplication operator ``(M_F f)(z) = F(z) f(z)`` on coefficients."""
    if F.dim != f.dim:
        raise ValueError(f"dimension mismatch: {F.dim} vs {f.dim}")
    if F.is_zero or f.is_zero:
        return VecLaurent.zero(F.dim)
    return VecLaurent(_convolve(F.coeffs, f.coeffs, "ij,tj->ti"), F.lo + f.lo, F.dim)


def lstar(F: MatLaurent) -> MatLaurent:
    """Pointwise adjoint on the circle: ``(F*)_n = (F_{-n})*``."""
    if F.is_zero:
        return F
    c = np.conj(np.swapaxes(F.coeffs[::-1], -1, -2))
    return MatLaurent(c, -F.hi, F.dim)


def ltilde(F: MatLaurent) -> MatLaurent:
    """``F~(z) = F(conj z)*``, i.e. ``(F~)_n = (F_n)*``."""
    if F.is_zero:
        return F
    return MatLaurent(np.conj(np.swapaxes(F.coeffs, -1, -2)), F.lo, F.dim)


def lreflect(F: MatLaurent) -> MatLaurent:
    """``z -> F(conj z)``: coefficient ``n`` moves to ``-n``."""
    if F.is_zero:
        return F
    return MatLaurent(F.coeffs[::-1], -F.hi, F.dim)


def lgamma(F: MatLaurent, gamma: GammaStructure) -> MatLaurent:
    """``F_Γ(z) = Γ F(z) Γ``; coefficientwise ``(F_Γ)_m = J conj(F_{-m}) conj(J)``."""
    if F.dim != gamma.dim:
        raise ValueError(f"dimension mismatch: {F.dim} vs {gamma.dim}")
    if F.is_zero:
        return F
    c = np.array([gamma.sandwich(A) for A in F.coeffs[::-1]])
    return MatLaurent(c, -F.hi, F.dim)


def ip_vec(f: VecLaurent, g: VecLaurent) -> complex:
    """``<f, g> = sum_n <a_n, b_n>`` (linear in f)."""
    if f.dim != g.dim:
        raise ValueError(f"dimension mismatch: {f.dim} vs {g.dim}")
    if f.is_zero or g.is_zero:
        return 0j
    lo, hi = max(f.lo, g.lo), min(f.hi, g.hi)
    if lo > hi:
        return 0j
    return complex(np.vdot(g.dense(lo, hi), f.dense(lo, hi)))


def ip_hs(F: MatLaurent, G: MatLaurent) -> complex:
    """Hilbert-Schmidt inner product ``sum_n tr(G_n* F_n)``."""
    if F.dim != G.dim:
        raise ValueError(f"dimension mismatch: {F.dim} vs {G.dim}")
    if F.is_zero or G.is_zero:
        return 0j
    lo, hi = max(F.lo, G.lo), min(F.hi, G.hi)
    if lo > hi:
        return 0j
    return complex(np.vdot(G.dense(lo, hi), F.dense(lo, hi)))


def eval_disk(F, lam: complex):
    """Value of an analytic Laurent polynomial at ``lam`` in the open disk."""
    if abs(lam) >= 1:
        raise ValueError(f"|lambda| = {abs(lam)} is not inside the unit disk")
    if not F.is_zero and F.lo < 0:
        raise ValueError("not analytic: negative frequencies present")
    return F(complex(lam))


class Truncation(NamedTuple):
    series: MatLaurent
    tail: float


def quadrature_nodes(N: int) -> np.ndarray:
    M = max(4 * (2 * N + 1), 4096)
    return np.exp(2j * np.pi * np.arange(M) / M)


def fourier_truncate(sampler: Callable[[np.ndarray], np.ndarray], N: int) -> Truncation:
    """Fourier coefficients ``|n| <= N`` of a matrix function sampled on the circle.

    ``sampler`` takes an array of points on the circle and returns an array of
    shape ``(M, d, d)`` (or ``(M,)`` for scalar functions). The tail estimate is
    the largest coefficient norm at ``|n|`` in ``{N-1, N}``; callers decide
    whether it is small enough.
    """
    z = quadrature_nodes(N)
    M = z.shape[0]
    vals = np.asarray(sampler(z), dtype=complex)
    if vals.ndim == 1:
        vals = vals[:, None, None]
    spec = np.fft.fft(vals, axis=0) / M
    idx = np.arange(-N, N + 1) % M
    coeffs = spec[idx]
    F = MatLaurent(coeffs, -N, vals.shape[-1])
    edge = [n for n in (-N, -N + 1, N - 1, N) if abs(n) >= max(N - 1, 0)]
    tail = max(float(np.linalg.norm(F.coeff(n), 2)) for n in edge)
    return Truncation(F, tail)
