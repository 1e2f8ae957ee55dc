"""Dense sampling oracle for the window constructions.

Everything here works on boundary samples at ``M`` equispaced nodes and
recovers coefficients with an explicit DFT matrix. Inner functions are
evaluated from their Potapov factors, never from their expansions, so the
only code shared with the block-Toeplitz route is the window indexing.
"""

from __future__ import annotations

import numpy as np

from .inner import InnerFunction
from .laurent import GammaStructure, MatLaurent
from .window import Window

__all__ = ["DenseOracle", "ORACLE_NODES"]

ORACLE_NODES = 4096


class DenseOracle:
    """Sampled versions of the window operators on a fixed window.

    Intermediate results are kept on the frequency range ``[-R, R]`` with
    ``R = 4N + 8``; results are returned on the window ``[-N, N]`` together
    with the mass that fell outside it (see :meth:`leak`).
    """

    def __init__(self, W: Window, gamma: GammaStructure | None = None, nodes: int = ORACLE_NODES):
        self.W = W
        self.gamma = gamma or GammaStructure.identity(W.d)
        self.M = nodes
        self.R = 4 * W.N + 8
        if 2 * self.R + 1 > nodes:
            raise ValueError(f"{nodes} nodes cannot resolve frequency range +-{self.R}")
        self.z = np.exp(2j * np.pi * np.arange(nodes) / nodes)
        self.freqs = np.arange(-self.R, self.R + 1)
        self._E = self.z[:, None] ** self.freqs[None, :]
        self._Ebar = np.conj(self.z)[:, None] ** self.freqs[None, :]
        self._last_leak = 0.0

    # sample <-> coefficient transforms
    def synth(self, c: np.ndarray, conj_nodes: bool = False) -> np.ndarray:
        """Samples ``(M, d)`` from coefficients ``(2R+1, d)``."""
        return (self._Ebar if conj_nodes else self._E) @ c

    def analyze(self, s: np.ndarray) -> np.ndarray:
        return self._E.conj().T @ s / self.M

    def lift(self, v: np.ndarray) -> np.ndarray:
        """Window vector to coefficients on ``[-R, R]``."""
        W = self.W
        c = np.zeros((2 * self.R + 1, W.d), complex)
        c[self.R - W.N: self.R + W.N + 1] = np.asarray(v).reshape(2 * W.N + 1, W.d)
        return c

    def restrict(self, c: np.ndarray) -> np.ndarray:
        W = self.W
        inside = c[self.R - W.N: self.R + W.N + 1]
        outside = np.concatenate([c[: self.R - W.N], c[self.R + W.N + 1:]])
        self._last_leak = float(np.linalg.norm(outside))
        return inside.reshape(-1)

    def leak(self) -> float:
        """Norm of the part of the last result that fell outside the window."""
        return self._last_leak

    # symbol samples
    def symbol(self, F, conj_nodes: bool = False) -> np.ndarray:
        z = np.conj(self.z) if conj_nodes else self.z
        if isinstance(F, InnerFunction) and F.factors is not None:
            return np.asarray(F(z))
        if isinstance(F, InnerFunction):
            F = F.expansion
        out = np.zeros((self.M, F.dim, F.dim), complex)
        for n, A in F.as_dict().items():
            out += (z ** n)[:, None, None] * A
        return out

    # coefficient-level building blocks
    def _mul(self, Fs: np.ndarray, c: np.ndarray, adjoint: bool = False) -> np.ndarray:
        s = self.synth(c)
        if adjoint:
            Fs = np.conj(np.swapaxes(Fs, 1, 2))
        return self.analyze(np.einsum("kij,kj->ki", Fs, s))

    def _plus(self, c: np.ndarray) -> np.ndarray:
        out = c.copy()
        out[self.freqs < 0] = 0
        return out

    def _minus(self, c: np.ndarray) -> np.ndarray:
        return c - self._plus(c)

    def _pmodel(self, Ts: np.ndarray, c: np.ndarray) -> np.ndarray:
        return self._plus(c) - self._mul(Ts, self._plus(self._mul(Ts, c, adjoint=True)))

    def _gamma_samples(self, s: np.ndarray) -> np.ndarray:
        return np.conj(s) @ self.gamma.J.T

    def _ctheta(self, Ts: np.ndarray, c: np.ndarray) -> np.ndarray:
        s = self._gamma_samples(self.synth(c)) * np.conj(self.z)[:, None]
        return self.analyze(np.einsum("kij,kj->ki", Ts, s))

    # window-level operators
    def mult(self, F, v):
        return self.restrict(self._mul(self.symbol(F), self.lift(v)))

    def proj_plus(self, v):
        return self.restrict(self._plus(self.lift(v)))

    def proj_model(self, theta, v):
        return self.restrict(self._pmodel(self.symbol(theta), self.lift(v)))

    def j_tilde(self, v):
        return self.restrict(self.analyze(self._gamma_samples(self.synth(self.lift(v)))))

    def j_star(self, v):
        # conj(f(conj z)) has coefficients conj(a_n), then Γ acts pointwise
        s = self.synth(self.lift(v), conj_nodes=True)
        return self.restrict(self.analyze(self._gamma_samples(s)))

    def c_theta(self, theta, v):
        return self.restrict(self._ctheta(self.symbol(theta), self.lift(v)))

    def tau_theta(self, theta, v):
        Ts = self.symbol(theta, conj_nodes=True)
        s = self.synth(self.lift(v), conj_nodes=True)
        s = np.einsum("kji,kj->ki", np.conj(Ts), s) * np.conj(self.z)[:, None]
        return self.restrict(self.analyze(s))

    def hankel(self, phi, v):
        c = self._minus(self._mul(self.symbol(phi), self._plus(self.lift(v))))
        return self.restrict(c)

    def hankel_tilde(self, psi, v):
        c = self._plus(self._mul(self.symbol(psi), self._minus(self.lift(v))))
        return self.restrict(c)

    def matto(self, phi, theta1, theta2, v):
        c = self._pmodel(self.symbol(theta1), self.lift(v))
        c = self._pmodel(self.symbol(theta2), self._mul(self.symbol(phi), c))
        return self.restrict(c)

    def c_lambda_psi(self, lam, psi, v):
        Ls, Ss = self.symbol(lam), self.symbol(psi)
        Ts = np.einsum("kij,kjl->kil", Ls, Ss)
        c = self.lift(v)
        fl = self._pmodel(Ls, c)
        rest = self._pmodel(Ts, c) - fl
        inner = self._ctheta(Ss, self._pmodel(Ss, self._mul(Ls, rest, adjoint=True)))
        return self.restrict(self._ctheta(Ls, fl) + self._mul(Ls, inner))
