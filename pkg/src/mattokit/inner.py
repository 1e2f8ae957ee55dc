"""Matrix inner functions built from Blaschke-Potapov factors.

Two tiers are supported. Factors with their zero at the origin are matrix
polynomials and every expansion is exact. Factors with a nonzero zero are
rational; their expansions are truncated at ``trunc`` terms and carry a tail
estimate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .laurent import (
    GammaStructure,
    MatLaurent,
    fourier_truncate,
    lgamma,
    lmul,
    lstar,
)

__all__ = [
    "PotapovFactor",
    "InnerFunction",
    "NotADivisorError",
    "CommutingPair",
    "STRATEGIES",
    "potapov_factor",
    "inner_product_chain",
    "check_inner",
    "check_gamma_symmetric",
    "divide",
    "random_commuting_pair",
    "random_unitary",
    "random_orthogonal",
    "diagonal_inner",
    "nonsymmetric_factor",
    "symmetric_symbol",
    "unitarity_defect",
    "commutator_defect",
    "product_expansion",
    "identity_inner",
]

DEFAULT_TRUNC = 32
_FACTOR_TOL = 1e-13
_N_SAMPLES = 64

STRATEGIES = ("scalar-times-identity", "powers-of-common-factor", "simultaneously-diagonal")


class NotADivisorError(ValueError):
    pass


@dataclass(frozen=True)
class PotapovFactor:
    """``B(z) = U (I - P + b_a(z) P)`` with ``b_a(z) = (z - a) / (1 - conj(a) z)``."""

    P: np.ndarray
    a: complex = 0j
    U: np.ndarray | None = None

    def __post_init__(self):
        P = np.atleast_2d(np.asarray(self.P, dtype=complex))
        d = P.shape[0]
        U = np.eye(d, dtype=complex) if self.U is None else np.atleast_2d(np.asarray(self.U, dtype=complex))
        if P.shape != (d, d) or U.shape != (d, d):
            raise ValueError("P and U must be square matrices of the same size")
        if np.linalg.norm(P @ P - P) > _FACTOR_TOL or np.linalg.norm(P - P.conj().T) > _FACTOR_TOL:
            raise ValueError("P is not an orthogonal projection")
        if np.linalg.norm(U @ U.conj().T - np.eye(d)) > _FACTOR_TOL:
            raise ValueError("U is not unitary")
        if abs(self.a) >= 1:
            raise ValueError(f"zero a = {self.a} is not inside the unit disk")
        P.setflags(write=False)
        U.setflags(write=False)
        object.__setattr__(self, "P", P)
        object.__setattr__(self, "U", U)
        object.__setattr__(self, "a", complex(self.a))

    @property
    def dim(self) -> int:
        return self.P.shape[0]

    @property
    def exact(self) -> bool:
        return self.a == 0

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        b = (z - self.a) / (1 - np.conj(self.a) * z)
        eye = np.eye(self.dim)
        inner = eye - self.P + np.multiply.outer(b, self.P)
        return self.U @ inner

    def expansion(self, trunc: int = DEFAULT_TRUNC) -> MatLaurent:
        d = self.dim
        eye = np.eye(d)
        if self.exact:
            return MatLaurent(np.array([self.U @ (eye - self.P), self.U @ self.P]), 0, d)
        a, ac = self.a, np.conj(self.a)
        b = np.empty(trunc + 1, complex)
        b[0] = -a
        b[1:] = ac ** np.arange(trunc) * (1 - abs(a) ** 2)
        c = np.array([bn * (self.U @ self.P) for bn in b])
        c[0] += self.U @ (eye - self.P)
        return MatLaurent(c, 0, d)


@dataclass(frozen=True)
class InnerFunction:
    """An inner function with its (possibly truncated) Taylor expansion.

    ``factors`` is ``None`` for inner functions obtained by division, in which
    case point evaluation falls back on the expansion.
    """

    expansion: MatLaurent
    factors: tuple | None = None
    exact: bool = True
    tail: float = 0.0
    trunc: int = field(default=DEFAULT_TRUNC)

    @property
    def dim(self) -> int:
        return self.expansion.dim

    @property
    def degree(self) -> int:
        return max(self.expansion.hi, 0)

    def __call__(self, z):
        if self.factors is None:
            return self.expansion(z)
        z = np.asarray(z, dtype=complex)
        out = np.broadcast_to(np.eye(self.dim, dtype=complex), z.shape + (self.dim, self.dim))
        for f in self.factors:
            out = out @ f(z)
        return out

    def star(self) -> MatLaurent:
        return lstar(self.expansion)

    def __matmul__(self, other: "InnerFunction") -> "InnerFunction":
        return inner_product_chain([self, other], trunc=max(self.trunc, other.trunc))

    def power(self, k: int) -> "InnerFunction":
        if k == 0:
            return identity_inner(self.dim)
        return inner_product_chain([self] * k, trunc=self.trunc)


def identity_inner(d: int) -> InnerFunction:
    return potapov_factor(np.zeros((d, d)), 0j, None)


def potapov_factor(P, a: complex = 0j, U=None, trunc: int = DEFAULT_TRUNC) -> InnerFunction:
    f = PotapovFactor(P, a, U)
    exp = f.expansion(trunc)
    tail = 0.0 if f.exact else float(abs(a) ** trunc)
    return InnerFunction(exp, (f,), f.exact, tail, trunc)


def inner_product_chain(factors: Sequence, trunc: int = DEFAULT_TRUNC) -> InnerFunction:
    """Left-to-right product of Potapov factors and/or inner functions."""
    flat: list = []
    for f in factors:
        if isinstance(f, InnerFunction):
            if f.factors is None:
                raise ValueError("cannot chain an inner function without factor data")
            flat.extend(f.factors)
        elif isinstance(f, PotapovFactor):
            flat.append(f)
        else:
            raise TypeError(f"unsupported factor type {type(f).__name__}")
    if not flat:
        raise ValueError("empty factor list")
    d = flat[0].dim
    if any(f.dim != d for f in flat):
        raise ValueError("dimension mismatch among factors")
    exact = all(f.exact for f in flat)
    if exact:
        exp = MatLaurent.identity(d)
        for f in flat:
            exp = lmul(exp, f.expansion())
        return InnerFunction(exp, tuple(flat), True, 0.0, trunc)
    chain = InnerFunction(MatLaurent.identity(d), tuple(flat), False, 0.0, trunc)
    series, tail = fourier_truncate(chain, trunc)
    return InnerFunction(series.analytic_part(), tuple(flat), False, tail, trunc)


def _boundary_samples(n: int = _N_SAMPLES) -> np.ndarray:
    return np.exp(2j * np.pi * np.arange(n) / n)


def unitarity_defect(F, n: int = _N_SAMPLES) -> float:
    """``max ||F(z) F(z)* - I||`` over ``n`` equispaced points of the circle."""
    vals = F(_boundary_samples(n))
    d = vals.shape[-1]
    prod = vals @ np.conj(np.swapaxes(vals, -1, -2)) - np.eye(d)
    return float(np.max(np.linalg.norm(prod, 2, axis=(-2, -1))))


def check_inner(F, tol: float | None = None) -> float:
    """Largest unitarity defect of ``F`` over 64 boundary samples."""
    exp = F.expansion if isinstance(F, InnerFunction) else F
    return unitarity_defect(exp)


def check_gamma_symmetric(F, gamma: GammaStructure | None = None) -> float:
    exp = F.expansion if isinstance(F, InnerFunction) else F
    gamma = gamma or GammaStructure.identity(exp.dim)
    return (lgamma(exp, gamma) - lstar(exp)).norm()


def product_expansion(lam, psi) -> MatLaurent:
    """Expansion of ``ΛΨ``; rational-tier products are re-truncated rather than widened."""
    if isinstance(lam, InnerFunction) and isinstance(psi, InnerFunction):
        if lam.factors is not None and psi.factors is not None:
            return (lam @ psi).expansion
        lam, psi = lam.expansion, psi.expansion
    return lmul(lam, psi)


def commutator_defect(F, G) -> float:
    F = F.expansion if isinstance(F, InnerFunction) else F
    G = G.expansion if isinstance(G, InnerFunction) else G
    return (lmul(F, G) - lmul(G, F)).norm()


def divide(theta: InnerFunction, lam: InnerFunction, tol: float = 1e-10) -> InnerFunction:
    """Inner ``Ψ = Λ* Θ`` when ``Λ`` divides ``Θ`` on the left."""
    if theta.dim != lam.dim:
        raise ValueError(f"dimension mismatch: {theta.dim} vs {lam.dim}")
    q = lmul(lam.star(), theta.expansion)
    neg = q.truncate(q.lo, -1).norm() if (not q.is_zero and q.lo < 0) else 0.0
    if neg > tol:
        raise NotADivisorError(f"not a divisor: negative-frequency part of size {neg:.3e}")
    psi = q.analytic_part()
    defect = check_inner(psi)
    if defect > tol:
        raise NotADivisorError(f"not a divisor: quotient innerness defect {defect:.3e}")
    exact = theta.exact and lam.exact
    return InnerFunction(psi, None, exact, max(theta.tail, lam.tail), theta.trunc)


# random constructions ---------------------------------------------------------

def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    """Haar unitary via QR of a complex Gaussian matrix."""
    Z = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    Q, R = np.linalg.qr(Z)
    ph = np.diag(R) / np.abs(np.diag(R))
    return Q * ph


def random_orthogonal(rng: np.random.Generator, d: int) -> np.ndarray:
    Q, R = np.linalg.qr(rng.standard_normal((d, d)))
    return Q * np.sign(np.diag(R))


def diagonal_inner(W: np.ndarray, exponents: Sequence[int], phases: Sequence[complex] | None = None,
                   zeros: Sequence[complex] | None = None, trunc: int = DEFAULT_TRUNC) -> InnerFunction:
    """``W diag(c_i b_i(z)) W^T`` with ``b_i`` a product of ``exponents[i]`` Blaschke factors.

    The result is pointwise complex symmetric for any unitary ``W``. Layer ``l``
    of the Blaschke products shares the zero ``zeros[l]`` (default 0).
    """
    W = np.asarray(W, dtype=complex)
    d = W.shape[0]
    k = np.asarray(exponents, dtype=int)
    if k.shape != (d,) or np.any(k < 0):
        raise ValueError("exponents must be d nonnegative integers")
    c = np.ones(d, complex) if phases is None else np.asarray(phases, dtype=complex)
    top = int(k.max()) if d else 0
    zeros = [0j] * top if zeros is None else list(zeros)
    U = W @ np.diag(c) @ W.T
    factors = []
    for layer in range(top):
        E = np.diag((k > layer).astype(float))
        P = np.conj(W) @ E @ W.T
        P = (P + P.conj().T) / 2
        factors.append(PotapovFactor(P, zeros[layer], U if layer == 0 else None))
    if not factors:
        factors.append(PotapovFactor(np.zeros((d, d)), 0j, U))
    return inner_product_chain(factors, trunc)


def nonsymmetric_factor(trunc: int = DEFAULT_TRUNC) -> InnerFunction:
    """Degree-one factor with ``P = v v*``, ``v = (1, i)/sqrt 2``; not complex symmetric."""
    v = np.array([1, 1j]) / np.sqrt(2)
    return potapov_factor(np.outer(v, v.conj()), 0j, None, trunc)


def _random_exponents(rng, d: int, top: int) -> np.ndarray:
    k = rng.integers(0, top + 1, size=d)
    k[rng.integers(0, d)] = top
    return k


def _phases(rng, d: int) -> np.ndarray:
    return np.exp(2j * np.pi * rng.random(d))


@dataclass(frozen=True)
class CommutingPair:
    lam: InnerFunction
    psi: InnerFunction
    certificate: dict


def random_commuting_pair(seed: int, d: int, degrees: Sequence[int], strategy: str,
                          zero_radius: float = 0.0, trunc: int = DEFAULT_TRUNC) -> CommutingPair:
    """Seeded pair ``(Λ, Ψ)`` of commuting, complex-symmetric inner functions.

    ``degrees = (deg Λ, deg Ψ)``. For ``powers-of-common-factor`` these are the
    exponents applied to one random degree-one factor ``B``. A positive
    ``zero_radius`` moves every Blaschke zero off the origin (rational tier).
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unsupported strategy {strategy!r}; expected one of {STRATEGIES}")
    if len(degrees) != 2 or min(degrees) < 0:
        raise ValueError("degrees must be two nonnegative integers")
    rng = np.random.default_rng(seed)
    kl, kp = int(degrees[0]), int(degrees[1])

    def zeros(n):
        if zero_radius == 0:
            return None
        return list(zero_radius * np.exp(2j * np.pi * rng.random(n)))

    if strategy == "scalar-times-identity":
        lam = diagonal_inner(np.eye(d), [kl] * d, [np.exp(2j * np.pi * rng.random())] * d, zeros(kl), trunc)
        psi = diagonal_inner(random_unitary(rng, d), _random_exponents(rng, d, kp), _phases(rng, d),
                             zeros(kp), trunc)
    elif strategy == "powers-of-common-factor":
        B = diagonal_inner(random_unitary(rng, d), _random_exponents(rng, d, 1), _phases(rng, d), zeros(1), trunc)
        lam, psi = B.power(kl), B.power(kp)
    else:
        Q = random_orthogonal(rng, d)
        lam = diagonal_inner(Q, _random_exponents(rng, d, kl), _phases(rng, d), zeros(kl), trunc)
        psi = diagonal_inner(Q, _random_exponents(rng, d, kp), _phases(rng, d), zeros(kp), trunc)
    cert = {
        "gamma_defect_lambda": check_gamma_symmetric(lam),
        "gamma_defect_psi": check_gamma_symmetric(psi),
        "commutator": commutator_defect(lam, psi),
        "inner_defect_lambda": check_inner(lam),
        "inner_defect_psi": check_inner(psi),
    }
    return CommutingPair(lam, psi, cert)


def symmetric_symbol(rng: np.random.Generator, band: tuple[int, int], generators: Sequence[MatLaurent],
                     scale: float = 1.0) -> MatLaurent:
    """Random complex-symmetric symbol ``c_0 I + sum_j c_j G_j`` with scalar Laurent ``c_j``.

    Commutes with every generator as long as the generators are complex
    symmetric and commute with each other.
    """
    lo, hi = band
    d = generators[0].dim if generators else 1
    eye = np.eye(d)

    def scalar():
        c = (rng.standard_normal(hi - lo + 1) + 1j * rng.standard_normal(hi - lo + 1)) * scale / 2
        return MatLaurent(c[:, None, None] * eye, lo, d)

    out = scalar()
    for G in generators:
        out = out + lmul(scalar(), G)
    return out
