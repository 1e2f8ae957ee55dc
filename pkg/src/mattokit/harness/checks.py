"""The identity-check catalogue.

Each check returns a nonnegative defect. ``upper`` checks pass when the
defect is strictly below their effective tolerance; ``lower`` checks are
witnesses and pass when the defect is at least their bound, independently of
the scenario tolerance.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable

import numpy as np

from ..conjugations import (
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
from ..inner import (
    InnerFunction,
    check_gamma_symmetric,
    check_inner,
    commutator_defect,
    divide,
    identity_inner,
    nonsymmetric_factor,
    potapov_factor,
    inner_product_chain,
    random_commuting_pair,
    symmetric_symbol,
)
from ..laurent import (
    GammaStructure,
    MatLaurent,
    VecLaurent,
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
from ..operators import (
    defect_operators,
    eq412_defect,
    hankel,
    hankel_tilde,
    lt_defect,
    matto,
    model_shift,
    symbol_transform,
)
from ..oracle import DenseOracle
from ..window import (
    Window,
    decomp_split,
    kernel,
    kernel_tilde,
    max_principal_angle,
    model_basis,
    mult_op,
    proj_halfspace,
    proj_model,
    shift_op,
)
from .scenario import Scenario, substream

__all__ = ["Check", "Context", "CATALOGUE", "CHECKS", "select_checks", "required_radius"]


# ---------------------------------------------------------------- context

def _random_laurent(rng, lo: int, hi: int, d: int, scale: float = 1.0) -> MatLaurent:
    shape = (hi - lo + 1, d, d)
    c = (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * scale / np.sqrt(2)
    return MatLaurent(c, lo, d)


def _half_width(F: MatLaurent) -> int:
    return 0 if F.is_zero else max(-F.lo, F.hi, 0)


def _chop(F: MatLaurent, rel: float = 1e-13) -> MatLaurent:
    if F.is_zero:
        return F
    cut = rel * max(F.norm(), 1.0)
    return MatLaurent.from_dict({n: A for n, A in F.as_dict().items() if np.abs(A).max() > cut}, F.dim)


def _sup_norm(F: MatLaurent, n: int = 256) -> float:
    z = np.exp(2j * np.pi * np.arange(n) / n)
    return float(max(np.linalg.norm(F(w), 2) for w in z))


class Context:
    """Scenario objects shared by all checks; built lazily, never mutated."""

    def __init__(self, s: Scenario, N: int | None = None):
        self.s = s
        self.d = s.d
        self.gamma = GammaStructure.identity(s.d)
        pair = random_commuting_pair(s.seed, s.d, s.degrees, s.strategy, s.zero_radius, s.trunc)
        self.pair = pair
        self.lam, self.psi = pair.lam, pair.psi
        self.theta = self.lam @ self.psi
        self.L, self.S, self.T = self.lam.expansion, self.psi.expansion, self.theta.expansion
        self.mL, self.mS, self.mT = (max(F.hi, 0) for F in (self.L, self.S, self.T))
        p = s.phi_band
        self.phi = _random_laurent(substream(s.seed, "scenario.phi"), -p, p, s.d, s.phi_scale)
        self.phi_sym = symmetric_symbol(substream(s.seed, "scenario.phi_sym"), (-p, p), [self.L, self.S],
                                        s.phi_scale)
        self.q = max(_half_width(self.phi), _half_width(self.phi_sym))
        self.N = N
        self._W = None

    @property
    def W(self) -> Window:
        if self._W is None:
            raise RuntimeError("window radius not resolved")
        return self._W

    def set_radius(self, N: int):
        self.N = N
        self._W = Window(N, self.d)

    def reach(self, kind: str) -> int:
        if kind == "none":
            return 0
        base = 3 * self.mT + 2
        return base if kind == "model" else base + self.q

    # window objects
    @cached_property
    def PL(self):
        return proj_model(self.L, self.W)

    @cached_property
    def PS(self):
        return proj_model(self.S, self.W)

    @cached_property
    def PT(self):
        return proj_model(self.T, self.W)

    @cached_property
    def VL(self):
        return model_basis(self.L, self.W).matrix

    @cached_property
    def VS(self):
        return model_basis(self.S, self.W).matrix

    @cached_property
    def VT(self):
        return model_basis(self.T, self.W).matrix

    @cached_property
    def ML(self):
        return mult_op(self.L, self.W).matrix

    @cached_property
    def MS(self):
        return mult_op(self.S, self.W).matrix

    @cached_property
    def MT(self):
        return mult_op(self.T, self.W).matrix

    @cached_property
    def CT(self):
        return c_theta(self.T, self.gamma, self.W)

    @cached_property
    def CL(self):
        return c_theta(self.L, self.gamma, self.W)

    @cached_property
    def CS(self):
        return c_theta(self.S, self.gamma, self.W)

    @cached_property
    def CLP(self):
        return c_lambda_psi(self.lam, self.psi, self.gamma, self.W)

    @cached_property
    def phi_norm(self) -> float:
        return _sup_norm(self.phi_sym)

    def interior(self, margin: int) -> np.ndarray:
        return self.W.interior(margin)

    def warm(self):
        """Build every cached window object up front (before any concurrent use)."""
        for name in ("PL", "PS", "PT", "VL", "VS", "VT", "ML", "MS", "MT", "CT", "CL", "CS", "CLP", "phi_norm"):
            getattr(self, name)


# ---------------------------------------------------------------- helpers

def _norm(X) -> float:
    X = np.asarray(X)
    if X.size == 0:
        return 0.0
    return float(np.linalg.norm(X, 2)) if X.ndim == 2 else float(np.linalg.norm(X))


def _ldist(A: MatLaurent, B: MatLaurent) -> float:
    return (A - B).norm()


def _vdist(f: VecLaurent, g: VecLaurent) -> float:
    return (f - g).norm()


def _anti(C) -> np.ndarray:
    return C.matrix


def _on(X: np.ndarray, V: np.ndarray, antilinear: bool = False) -> float:
    """Norm of ``X`` restricted to the span of ``V`` (conjugated input if antilinear)."""
    if V.shape[1] == 0:
        return 0.0
    return _norm(X @ (np.conj(V) if antilinear else V))


def _cols(X: np.ndarray, idx: np.ndarray) -> float:
    return _norm(X[:, idx]) if idx.size else 0.0


def _frame_vectors(rng, V: np.ndarray, count: int) -> np.ndarray:
    """``count`` random unit vectors in the span of ``V``."""
    r = V.shape[1]
    if r == 0:
        return np.zeros((V.shape[0], 0), complex)
    c = rng.standard_normal((r, count)) + 1j * rng.standard_normal((r, count))
    c /= np.linalg.norm(c, axis=0)
    return V @ c


def _interior_vector(rng, W: Window, margin: int) -> np.ndarray:
    v = np.zeros(W.D, complex)
    idx = W.interior(margin)
    v[idx] = rng.standard_normal(idx.size) + 1j * rng.standard_normal(idx.size)
    n = np.linalg.norm(v)
    return v / n if n else v


def _basis_vectors(d: int):
    return [np.eye(d)[i] for i in range(d)]


# ---------------------------------------------------------------- laurent_core

def c_lstar_involution(ctx, rng):
    return max(_ldist(lstar(lstar(F)), F) for F in (ctx.L, ctx.S, ctx.T, ctx.phi, ctx.phi_sym))


def c_lgamma_involution(ctx, rng):
    g = ctx.gamma
    return max(_ldist(lgamma(lgamma(F, g), g), F) for F in (ctx.L, ctx.S, ctx.T, ctx.phi, ctx.phi_sym))


def c_gamma_reflection(ctx, rng):
    out = 0.0
    for F in (ctx.L, ctx.S, ctx.T, ctx.phi_sym):
        sym = check_gamma_symmetric(F, ctx.gamma)
        if sym > 1e-12:
            return float("inf")
        out = max(out, _ldist(lreflect(lgamma(F, ctx.gamma)), ltilde(F)))
    return out


def c_parseval(ctx, rng):
    d = ctx.d
    f = VecLaurent(rng.standard_normal((11, d)) + 1j * rng.standard_normal((11, d)), -5, d)
    direct = float(np.sum(np.abs(f.coeffs) ** 2))
    z = np.exp(2j * np.pi * np.arange(64) / 64)
    quad = float(np.mean([np.linalg.norm(f(w)) ** 2 for w in z]))
    ip = ip_vec(f, f)
    return max(abs(ip - direct), abs(quad - direct), abs(ip.imag)) / direct


def c_hs_adjoint(ctx, rng):
    F, G = ctx.phi, _random_laurent(rng, -3, 3, ctx.d)
    lhs, rhs = ip_hs(F, G), ip_hs(lstar(G), lstar(F))
    scale = np.sqrt(ip_hs(F, F).real * ip_hs(G, G).real)
    return abs(lhs - rhs) / scale


def c_lmul_quadrature(ctx, rng):
    F, G = ctx.phi, _random_laurent(rng, -2, 3, ctx.d)
    prod = lmul(F, G)
    R = max(-prod.lo, prod.hi) + 2
    quad = fourier_truncate(lambda z: np.asarray(F(z)) @ np.asarray(G(z)), R).series
    return _ldist(quad, prod.truncate(-R, R))


def _jm_defect(ctx, F: MatLaurent, G: MatLaurent) -> float:
    """``J* M_F - M_G J*`` on the exactness region."""
    W = ctx.W
    Js = j_star(W, ctx.gamma).matrix
    MF, MG = mult_op(F, W).matrix, mult_op(G, W).matrix
    X = Js @ np.conj(MF) - MG @ Js
    return _cols(X, W.interior(max(_half_width(F), _half_width(G))))


def c_jm_gamma_real(ctx, rng):
    F = MatLaurent(ctx.phi_sym.coeffs.real.astype(complex), ctx.phi_sym.lo, ctx.d)
    return _jm_defect(ctx, F, F)


def c_jm_reflected(ctx, rng):
    F = ctx.phi_sym
    return _jm_defect(ctx, F, ltilde(F))


def c_jm_symmetric_witness(ctx, rng):
    return _jm_defect(ctx, ctx.phi_sym, ctx.phi_sym)


# ---------------------------------------------------------------- inner_functions

def c_innerness(ctx, rng):
    return max(check_inner(F) for F in (ctx.lam, ctx.psi, ctx.theta))


def c_gamma_symmetry(ctx, rng):
    return max(check_gamma_symmetric(F, ctx.gamma) for F in (ctx.L, ctx.S, ctx.T, ctx.phi_sym))


def c_uniq_commute(ctx, rng):
    psi2 = divide(ctx.theta, ctx.lam)
    return max(check_gamma_symmetric(psi2.expansion, ctx.gamma), commutator_defect(ctx.lam, psi2),
               commutator_defect(ctx.lam, ctx.psi))


def c_lgamma_inner(ctx, rng):
    return max(check_inner(lgamma(F, ctx.gamma)) for F in (ctx.L, ctx.S, ctx.T))


def c_divide_roundtrip(ctx, rng):
    psi2 = divide(ctx.theta, ctx.lam)
    return max(_ldist(lmul(ctx.L, psi2.expansion), ctx.T), _ldist(psi2.expansion, ctx.S))


def _nontrivial(F: InnerFunction) -> int:
    return sum(1 for f in F.factors if np.abs(f.P).max() > 0)


def c_degree_additivity(ctx, rng):
    out = abs(ctx.mT - ctx.mL - ctx.mS)
    for F in (ctx.lam, ctx.psi, ctx.theta):
        out = max(out, abs(F.degree - _nontrivial(F)))
    return float(out)


# ---------------------------------------------------------------- window_spaces

def c_halfspace(ctx, rng):
    W = ctx.W
    Pp, Pm = proj_halfspace(W, "+").matrix, proj_halfspace(W, "-").matrix
    return max(_norm(Pp + Pm - np.eye(W.D)), _norm(Pp @ Pp - Pp), _norm(Pp @ Pm))


def c_proj_model(ctx, rng):
    out = 0.0
    for P in (ctx.PL, ctx.PS, ctx.PT):
        X = P.matrix
        idx = ctx.interior(P.margin)
        out = max(out, _norm(X - X.conj().T), _cols(X @ X - X, idx))
    return out


def c_decomposition(ctx, rng):
    F = np.hstack([ctx.VL, ctx.ML @ ctx.VS])
    gram = _norm(F.conj().T @ F - np.eye(F.shape[1])) if F.shape[1] else 0.0
    if F.shape[1] != ctx.VT.shape[1]:
        return float("inf")
    return max(gram, max_principal_angle(F, ctx.VT))


def c_projection_split(ctx, rng):
    X = ctx.PT.matrix - (ctx.PL.matrix + ctx.ML @ ctx.PS.matrix @ ctx.ML.conj().T)
    return _cols(X, ctx.interior(3 * ctx.mT))


def _lambdas(ctx):
    return ctx.s.lambda_samples


def c_kernel_split(ctx, rng):
    W, N = ctx.W, ctx.W.N
    out = 0.0
    for lam in _lambdas(ctx):
        Lv = np.asarray(ctx.lam(lam))
        for x in _basis_vectors(ctx.d):
            lhs = kernel(ctx.theta, lam, x, W)
            rhs = kernel(ctx.lam, lam, x, W) + lapply(ctx.L, kernel(ctx.psi, lam, Lv.conj().T @ x, W))
            out = max(out, _vdist(lhs, rhs.truncate(0, N)))
    return out


def c_kernel_tilde_split(ctx, rng):
    W = ctx.W
    out = 0.0
    for lam in _lambdas(ctx):
        Sv = np.asarray(ctx.psi(lam))
        for x in _basis_vectors(ctx.d):
            lhs = kernel_tilde(ctx.theta, lam, x, W)
            rhs = kernel_tilde(ctx.lam, lam, Sv @ x, W) + lapply(ctx.L, kernel_tilde(ctx.psi, lam, x, W))
            out = max(out, _vdist(lhs, rhs))
    return out


def c_kernel_projection(ctx, rng):
    W = ctx.W
    top = W.N - 2 * ctx.mL
    out = 0.0
    for lam in _lambdas(ctx):
        Sv = np.asarray(ctx.psi(lam))
        for x in _basis_vectors(ctx.d):
            k = kernel(ctx.theta, lam, x, W).truncate(0, top)
            a = W.from_vec(ctx.PL.matrix @ W.to_vec(k))
            out = max(out, _vdist(a, kernel(ctx.lam, lam, x, W)))
            kt = kernel_tilde(ctx.theta, lam, x, W)
            b = W.from_vec(ctx.PL.matrix @ W.to_vec(kt))
            out = max(out, _vdist(b, kernel_tilde(ctx.lam, lam, Sv @ x, W)))
    return out


def _szego(lam: complex, x: np.ndarray, top: int) -> VecLaurent:
    geo = np.conj(lam) ** np.arange(top + 1)
    return VecLaurent(geo[:, None] * x[None, :], 0, x.size)


def c_kernel_definition(ctx, rng):
    W = ctx.W
    top = W.N - 2 * ctx.mT
    out = 0.0
    for lam in _lambdas(ctx):
        for x in _basis_vectors(ctx.d):
            k = W.from_vec(ctx.PT.matrix @ W.to_vec(_szego(lam, x, top)))
            out = max(out, _vdist(k, kernel(ctx.theta, lam, x, W)))
    return out


def c_reproducing(ctx, rng):
    W = ctx.W
    out = 0.0
    for lam in _lambdas(ctx):
        for x in _basis_vectors(ctx.d):
            k = kernel(ctx.theta, lam, x, W)
            # frame vectors carry roundoff at negative frequencies; K_Θ lies in H^2
            for f in (W.from_vec(v).truncate(0, W.N) for v in ctx.VT.T):
                out = max(out, abs(ip_vec(f, k) - np.vdot(x, f(lam))))
    return out


def c_p_theta_identities(ctx, rng):
    W = ctx.W
    Pp, Pm = proj_halfspace(W, "+").matrix, proj_halfspace(W, "-").matrix
    MT, ML, PT = ctx.MT, ctx.ML, ctx.PT.matrix
    idx = ctx.interior(3 * ctx.mT)
    forms = [
        MT @ Pm @ MT.conj().T - Pm,
        MT @ Pm @ MT.conj().T @ Pp,
        Pp @ ML @ Pm @ ML.conj().T + ML @ ctx.PS.matrix @ ML.conj().T,
        Pp @ MT @ Pm @ MT.conj().T,
    ]
    return max(_cols(X - PT, idx) for X in forms)


def c_kernel_density(ctx, rng):
    W = ctx.W
    r = ctx.VT.shape[1]
    if r == 0:
        return 0.0
    m = 2 * r
    pts = 0.5 * np.exp(2j * np.pi * (np.arange(m) + 0.3 * rng.random(m)) / m)
    cols = [W.to_vec(kernel(ctx.theta, lam, x, W)) for lam in pts for x in _basis_vectors(ctx.d)]
    U, s, _ = np.linalg.svd(np.array(cols).T, full_matrices=False)
    k = int(np.sum(s > 1e-10 * s[0]))
    if k != r:
        return float("inf")
    return max_principal_angle(U[:, :k], ctx.VT)


def c_decomp_split(ctx, rng):
    out = 0.0
    for f in _frame_vectors(rng, ctx.VT, 4).T:
        a, b = decomp_split(ctx.lam, ctx.psi, f, ctx.W)
        out = max(out, _norm(a + b - f), abs(np.vdot(a, b)), _norm(ctx.PL.matrix @ a - a))
    return out


# ---------------------------------------------------------------- conjugations

def c_j_tilde(ctx, rng):
    W = ctx.W
    J = j_tilde(W, ctx.gamma)
    return _norm(compose(J, J).matrix - np.eye(W.D))


def c_j_star(ctx, rng):
    W = ctx.W
    Js = j_star(W, ctx.gamma)
    Z = shift_op(W, 1).matrix
    Pp = proj_halfspace(W, "+").matrix
    return max(
        _norm(compose(Js, Js).matrix - np.eye(W.D)),
        _cols(Js.matrix @ np.conj(Z) - Z @ Js.matrix, W.interior(1)),
        _norm(Js.matrix @ np.conj(Pp) - Pp @ Js.matrix),
    )


def c_c_theta_conjugation(ctx, rng):
    out = 0.0
    for C, V in ((ctx.CT, ctx.VT), (ctx.CL, ctx.VL), (ctx.CS, ctx.VS)):
        out = max(out, max(is_conjugation_on(C, V)))
    return out


def designated_nonsymmetric():
    """Fixed non-symmetric inner function and window for the ``c_theta`` witness."""
    return nonsymmetric_factor(), Window(6, 2)


def c_c_theta_nonsymmetric(ctx, rng):
    theta, W = designated_nonsymmetric()
    V = model_basis(theta, W).matrix
    return is_conjugation_on(c_theta(theta, None, W), V).involution


def c_c_theta_intertwining(ctx, rng):
    W = ctx.W
    C = ctx.CT.matrix
    Z, Zb = shift_op(W, 1).matrix, shift_op(W, -1).matrix
    return _cols(Zb @ C - C @ np.conj(Z), W.interior(ctx.CT.margin + 1))


def c_tau(ctx, rng):
    W = ctx.W
    tau = tau_theta(ctx.T, W)
    idx = W.interior(tau.margin)
    X = tau.matrix[:, idx]
    unit = _norm(X.conj().T @ X - np.eye(idx.size)) if idx.size else 0.0
    target = model_basis(ltilde(ctx.T), W).matrix
    image = tau.matrix @ ctx.VT
    if image.shape[1] != target.shape[1]:
        return float("inf")
    gram = _norm(image.conj().T @ image - np.eye(image.shape[1])) if image.shape[1] else 0.0
    return max(unit, gram, max_principal_angle(image, target))


def c_c_theta_factorization(ctx, rng):
    W = ctx.W
    tau = tau_theta(ctx.T, W)
    X = compose(j_star(W, ctx.gamma), tau).matrix - ctx.CT.matrix
    return _cols(X, W.interior(max(tau.margin, ctx.CT.margin)))


def c_c_lambda_psi(ctx, rng):
    return max(is_conjugation_on(ctx.CLP, ctx.VT))


def c_canonical(ctx, rng):
    theta_ns, W_ns = designated_nonsymmetric()
    cases = [(ctx.CT, ctx.VT, True), (ctx.CLP, ctx.VT, True),
             (c_theta(theta_ns, None, W_ns), model_basis(theta_ns, W_ns).matrix, False)]
    out = 0.0
    for C, V, expected in cases:
        direct = max(canonical_criterion(C, V))
        report = max(is_conjugation_on(C, V))
        if (direct < 1e-10) != (report < 1e-10) or (direct < 1e-10) != expected:
            return float("inf")
        if expected:
            out = max(out, direct, report)
    return out


def _apply(C, v):
    return C.matrix @ np.conj(v)


def c_ctheta_item1(ctx, rng):
    out = 0.0
    for f in ctx.VL.T:
        out = max(out, _norm(_apply(ctx.CT, f) - ctx.MS @ _apply(ctx.CL, f)))
    for f in ctx.VS.T:
        out = max(out, _norm(_apply(ctx.CT, ctx.ML @ f) - _apply(ctx.CS, f)))
    return out


def c_ctheta_item2(ctx, rng):
    out = 0.0
    for f in ctx.VS.T:
        out = max(out, _norm(_apply(ctx.CT, f) - ctx.ML @ _apply(ctx.CS, f)))
    for f in ctx.VL.T:
        out = max(out, _norm(_apply(ctx.CT, ctx.MS @ f) - _apply(ctx.CL, f)))
    return out


def _products(ctx):
    PL, PS = ctx.PL.matrix, ctx.PS.matrix
    first = compose(ctx.CLP, ctx.CT).matrix
    second = compose(ctx.CT, ctx.CLP).matrix
    return (first, PL @ ctx.MS.conj().T + ctx.ML @ PS), (second, PS @ ctx.ML.conj().T + ctx.MS @ PL)


def c_unitary_product_1(ctx, rng):
    X, Y = _products(ctx)[0]
    return _on(X - Y, ctx.VT)


def c_unitary_product_2(ctx, rng):
    X, Y = _products(ctx)[1]
    return _on(X - Y, ctx.VT)


def c_products_unitary(ctx, rng):
    V = ctx.VT
    out = 0.0
    for X, _ in _products(ctx):
        B = V.conj().T @ X @ V
        out = max(out, _norm(B.conj().T @ B - np.eye(B.shape[0])), _norm(X @ V - V @ B))
    return out


def c_extract_multiplier(ctx, rng):
    W = ctx.W
    m = extract_multiplier(ctx.CT, ctx.gamma, W)
    expected = lmul(MatLaurent.monomial(np.eye(ctx.d), -1), ctx.T)
    alt = compose(j_tilde(W, ctx.gamma), mult_op(lstar(m.symbol), W)).matrix - ctx.CT.matrix
    return max(_ldist(m.symbol, expected), m.structure_defect, m.intertwining_defect,
               _cols(alt, W.interior(ctx.CT.margin + 1)))


def c_block_factorization(ctx, rng):
    bf = block_factorization(ctx.lam, ctx.psi, ctx.gamma, ctx.W)
    return max([bf.reconstruction_defect, *bf.certificates.values()])


# ---------------------------------------------------------------- operators

def c_model_shift(ctx, rng):
    S, Ss = model_shift(ctx.T, ctx.W)
    A = S.compressed
    out = max(_norm(A.conj().T - Ss.compressed), max(0.0, _norm(A) - 1.0))
    if ctx.s.exact and A.size:
        out = max(out, _norm(np.linalg.matrix_power(A, ctx.mT)))
    return out


def c_matto_adjoint(ctx, rng):
    A = matto(ctx.phi, ctx.lam, ctx.theta, ctx.W)
    B = matto(lstar(ctx.phi), ctx.theta, ctx.lam, ctx.W)
    full = _on(A.full.matrix.conj().T - B.full.matrix, ctx.VT)
    return max(_norm(A.compressed.conj().T - B.compressed), full)


def c_hankel_vanishing(ctx, rng):
    W = ctx.W
    analytic = [ctx.T, ctx.phi.analytic_part(), ctx.phi_sym.analytic_part()]
    out = max(float(np.abs(hankel(F, W).matrix).max()) for F in analytic)
    anti = MatLaurent.monomial(np.eye(ctx.d), -1) + ctx.phi.analytic_part()
    if np.abs(hankel(anti, W).matrix).max() == 0:
        out = float("inf")
    return out


def c_hankel_factorization(ctx, rng):
    W = ctx.W
    lhs = hankel_tilde(ctx.T, W).matrix @ hankel(lmul(lstar(ctx.T), ctx.phi), W).matrix
    rhs = matto(ctx.phi, ctx.theta, ctx.theta, W).full.matrix
    return _on(lhs - rhs, ctx.VT)


def c_theorem_lt(ctx, rng):
    return max(lt_defect(ctx.phi, ctx.lam, ctx.theta, ctx.gamma, ctx.W),
               lt_defect(ctx.phi, ctx.theta, ctx.theta, ctx.gamma, ctx.W))


def c_theorem_lt_alt(ctx, rng):
    psi = symbol_transform(ctx.phi, ctx.lam, ctx.theta, ctx.gamma)
    alt = lmul(lmul(ctx.T, lgamma(ctx.phi, ctx.gamma)), lstar(ctx.L))
    return _ldist(psi, alt)


def c_lt_round_trip(ctx, rng):
    psi = symbol_transform(ctx.phi, ctx.lam, ctx.theta, ctx.gamma)
    back = _chop(symbol_transform(psi, ctx.lam, ctx.theta, ctx.gamma))
    A = matto(ctx.phi, ctx.lam, ctx.theta, ctx.W).compressed
    B = matto(back, ctx.lam, ctx.theta, ctx.W).compressed
    return _norm(A - B)


def c_eq412_symmetric(ctx, rng):
    out = eq412_defect(ctx.phi_sym, ctx.theta, ctx.gamma, ctx.W)
    if ctx.d == 1:
        out = max(out, eq412_defect(ctx.phi, ctx.theta, ctx.gamma, ctx.W))
    return out


def designated_eq412():
    """``Θ = diag(z, z^2)`` with the off-diagonal symbol ``E_12``."""
    e1 = np.diag([1.0, 0.0])
    theta = inner_product_chain([potapov_factor(np.eye(2)), potapov_factor(e1)])
    phi = MatLaurent.constant(np.array([[0, 1], [0, 0]], dtype=complex))
    return phi, theta, Window(8, 2)


def c_eq412_counterexample(ctx, rng):
    phi, theta, W = designated_eq412()
    return eq412_defect(phi, theta, None, W)


def c_scalar_reduction(ctx, rng):
    s = ctx.s
    pair = random_commuting_pair(s.seed, 1, s.degrees, "scalar-times-identity")
    theta = pair.lam @ pair.psi
    m = theta.degree
    phi = _random_laurent(rng, -2, 2, 1)
    W = Window(3 * m + 8, 1)
    V = model_basis(theta, W).matrix
    T = theta.expansion
    hf = hankel_tilde(T, W).matrix @ hankel(lmul(lstar(T), phi), W).matrix - matto(phi, theta, theta, W).full.matrix
    return max(eq412_defect(phi, theta, None, W), _on(hf, V))


def _defect_vectors(ctx, rng):
    return _frame_vectors(rng, ctx.VT, 24)


def c_defect_identity(ctx, rng):
    lhs, rhs = defect_operators(ctx.phi_sym, ctx.lam, ctx.psi, ctx.gamma, ctx.W)
    F = _defect_vectors(ctx, rng)
    if F.shape[1] == 0:
        return 0.0
    diff = np.linalg.norm((lhs - rhs) @ np.conj(F), axis=0)
    return float(diff.max() / (1.0 + ctx.phi_norm))


WITNESS_SCENARIO = Scenario(seed=1, d=2, strategy="powers-of-common-factor", degrees=(1, 2))


def c_defect_witness(ctx, rng):
    """Largest ``||lhs||`` on the designated witness scenario (fixed, independent of ``ctx``)."""
    wctx = Context(WITNESS_SCENARIO)
    wctx.set_radius(wctx.reach("symbol") + 4)
    lhs, _ = defect_operators(wctx.phi_sym, wctx.lam, wctx.psi, wctx.gamma, wctx.W)
    F = _defect_vectors(wctx, substream(WITNESS_SCENARIO.seed, "ops.defect_witness"))
    return float(np.linalg.norm(lhs @ np.conj(F), axis=0).max())


def c_defect_collapse(ctx, rng):
    lhs, rhs = defect_operators(ctx.phi_sym, ctx.theta, identity_inner(ctx.d), ctx.gamma, ctx.W)
    return max(_on(lhs, ctx.VT, True), _on(rhs, ctx.VT, True))


def c_intermediate_a(ctx, rng):
    W = ctx.W
    MF = mult_op(ctx.phi, W).matrix
    lhs = matto(ctx.phi, ctx.theta, ctx.lam, W).full.matrix
    PL = ctx.PL.matrix
    rhs = matto(ctx.phi, ctx.lam, ctx.lam, W).full.matrix @ PL + PL @ MF @ ctx.ML @ ctx.PS.matrix @ ctx.ML.conj().T
    return _on(lhs - rhs, ctx.VT)


def c_intermediate_b(ctx, rng):
    W = ctx.W
    phis = lstar(ctx.phi)
    lhs = matto(phis, ctx.lam, ctx.theta, W).full.matrix
    PL = ctx.PL.matrix
    rhs = matto(phis, ctx.lam, ctx.lam, W).full.matrix + \
        ctx.ML @ ctx.PS.matrix @ ctx.ML.conj().T @ mult_op(phis, W).matrix @ PL
    return _on(lhs - rhs, ctx.VL)


# ---------------------------------------------------------------- oracle

def c_oracle(ctx, rng):
    W = ctx.W
    O = DenseOracle(W, ctx.gamma)
    lam, psi, theta, phi = ctx.lam, ctx.psi, ctx.theta, ctx.phi
    tau = tau_theta(ctx.T, W)
    Js, Jt = j_star(W, ctx.gamma), j_tilde(W, ctx.gamma)
    MF = mult_op(phi, W)
    H, Ht = hankel(phi, W), hankel_tilde(ctx.L, W)
    A = matto(phi, lam, theta, W).full
    cases = [
        (MF.matrix, False, MF.margin, lambda v: O.mult(phi, v)),
        (ctx.PT.matrix, False, ctx.PT.margin, lambda v: O.proj_model(theta, v)),
        (ctx.PL.matrix, False, ctx.PL.margin, lambda v: O.proj_model(lam, v)),
        (Jt.matrix, True, 0, O.j_tilde),
        (Js.matrix, True, 0, O.j_star),
        (ctx.CT.matrix, True, ctx.CT.margin, lambda v: O.c_theta(theta, v)),
        (tau.matrix, False, tau.margin, lambda v: O.tau_theta(theta, v)),
        (H.matrix, False, H.margin, lambda v: O.hankel(phi, v)),
        (Ht.matrix, False, Ht.margin, lambda v: O.hankel_tilde(lam, v)),
        (A.matrix, False, A.margin, lambda v: O.matto(phi, lam, theta, v)),
        (ctx.CLP.matrix, True, ctx.CLP.margin, lambda v: O.c_lambda_psi(lam, psi, v)),
    ]
    out = 0.0
    for M, anti, margin, ref in cases:
        margin = min(margin, W.N)
        for _ in range(2):
            v = _interior_vector(rng, W, margin)
            got = M @ (np.conj(v) if anti else v)
            want = ref(v)
            out = max(out, _norm(got - want), O.leak())
    return out


# ---------------------------------------------------------------- catalogue

@dataclass(frozen=True)
class Check:
    id: str
    anchor: str
    tol: float
    fn: Callable
    kind: str = "upper"
    reach: str = "model"
    applies: Callable | None = None

    def applicable(self, ctx: Context) -> bool:
        return self.applies is None or bool(self.applies(ctx))


_A = {
    "lstar": r"$\sum_{n=-\infty}^{\infty}(F_{-n})^{*}z^n$",
    "lgamma_inv": r"$({\mathbf{F}}_\Gamma)_\Gamma={\mathbf{F}}$",
    "tilde": r"then ${\mathbf{F}}_\Gamma=\widetilde{{\mathbf{F}}}$",
    "parseval": "its Fourier series converges in the",
    "hs": r"$\langle {\mathbf{F}},{\mathbf{G}}\rangle_{L^2}=\langle {\mathbf{G}}^*,{\mathbf{F}}^*\rangle$",
    "mult": r"$(M_{\mathbf{F}} f)({z})={\mathbf{F}}({z})f({z})$",
    "jm": r"${\mathbf{J}}^*{\mathbf{M}}_{\mathbf{F}}={\mathbf{M}}_{\mathbf{F}}{\mathbf{J}}^*$",
    "inner": r"the boundary values $\Theta({z})$ are unitary operators a.e.",
    "gsym": r"$\Gamma\Phi(z)\Gamma=\Phi(z)^{*}$ a.e. on $\mathbb{T}$",
    "uniq": r"Then, $\Lambda$ and $\Psi$ commute.",
    "lgamma_inner": r"${\mathbf{F}}_\Gamma$ is an inner function if and only if ${\mathbf{F}}$ is",
    "divide": r"there exists an inner function $\Psi$ ... such that $\Theta=\Lambda\Psi$",
    "formal": "admits a formal Fourier expansion",
    "pminus": r"Let $P_{-}=I-P_{+}$",
    "ptheta": r"Let $P_{\Theta}$ be the orthogonal projection",
    "item1": r"$K_{\Theta}=K_{\Lambda}\oplus \Lambda K_{\Psi}.$",
    "item2": r"$P_{\Theta}=P_{\Lambda}+\Lambda P_{\Psi}\Lambda^{*}.$",
    "item3": r"$k_{\lambda}^{\Theta}(z)x=k_{\lambda}^{\Lambda}(z)x+\Lambda(z)k_{\lambda}^{\Psi}(z)\Lambda(\lambda)^{*}x.$",
    "item4": r"$\widetilde{k}_{\lambda}^{\Theta}(z)x=\widetilde{k}_{\lambda}^{\Lambda}(z)\Psi(\lambda)x+\Lambda(z)\widetilde{k}_{\lambda}^{\Psi}(z)x$",
    "item5": r"$P_{\Lambda}(k_{\lambda}^{\Theta}(z)x)=k_{\lambda}^{\Lambda}(z)x$",
    "kdef": r"${\mathbf{k}}_{\lambda}^{\Theta}x=P_{\Theta}({\mathbf{k}}_{\lambda}x)$",
    "repro": "has the following reproducing property",
    "pid": r"$P_{\Theta}=\Theta P_{-}\Theta^{*}-P_{-}$",
    "dense": r"is a dense subset of $K_{\Theta}$",
    "split": r"$P_{\Theta}=P_{\Lambda}+\Lambda P_{\Psi}\Lambda^{*}$",
    "jtilde": r"$(\widetilde{{\mathbf{J}}}f)(z)=\Gamma(f(z))$",
    "jstar": r"is an ${\mathbf{M}}_z$-commuting conjugation",
    "cinv": r"${\mathbf{C}}_{\Theta}(K_\Theta)=K_\Theta.$",
    "ciff": r"if and only if $\Theta$ is $\Gamma$-symmetric",
    "cmz": r"${\mathbf{C}}_{\Theta}$ is an $M_{z}$-conjugation",
    "tau": r"is a unitary operator which maps $K_{\Theta}$ onto $K_{\widetilde{\Theta}}$",
    "cfac": r"${\mathbf{C}}_{\Theta}={\mathbf{J}}^*\tau_\Theta$",
    "clp": r"is a conjugation on $K_{\Theta}$.",
    "canon": r"such that $\Gamma^2=I_\mathcal{H}$",
    "ct1": r"$C_{\Theta}(f_{\Lambda}+\Lambda f_{\Psi})=C_{\Psi}(f_{\Psi})+\Psi C_{\Lambda}(f_{\Lambda}).$",
    "ct2": r"$C_{\Theta}(f_{\Psi}+\Psi f_{\Lambda})=C_{\Lambda}(f_{\Lambda})+\Lambda C_{\Psi}(f_{\Psi}).$",
    "up1": r"$C_{\Lambda,\Psi}C_{\Theta}=P_{\Lambda}\Psi^{*}+\Lambda P_{\Psi}$",
    "up2": r"$C_{\Theta}C_{\Lambda,\Psi}=P_{\Psi}\Lambda^{*}+\Psi P_{\Lambda}$",
    "unit": "are unitary operators.",
    "mult_u": r"$C=M_{U}\widetilde{{\mathbf{J}}}=\widetilde{{\mathbf{J}}}M_{U^{*}}$",
    "block": r"$M_{U}\widetilde{{\mathbf{J}}}\oplus M_{V}\widetilde{{\mathbf{J}}}$",
    "modl": "the model operators",
    "matto": r"$A_{\Phi}^{\Theta_{1}, \Theta_{2}}f=P_{\Theta_{2}}(\Phi f)$",
    "hankel": r"$H_{\Phi}f=P_{-}(\Phi f)$",
    "hfac": r"\widetilde{H}_{\Theta}H_{\Theta^{*}\Phi}f",
    "lt": r"$\Psi(z)=\Gamma\Theta_{2}(z)^*\Phi(z)\Theta_{1}(z)\Gamma$",
    "lt_alt": r"$=\Theta_{2}(z)\Gamma\Phi(z)\Gamma\Theta_{1}(z)^*$",
    "lt_rt": r"belongs to $\mathcal{MT}(\Theta_{1}, \Theta_{2})$",
    "e412s": r"it is satisfied if also $\Phi$ is $\Gamma$-symmetric",
    "e412c": "is not necessarily true",
    "scalar": r"every TTO on the model space $K_\theta$ is $C_\theta$-symmetric",
    "defect": r"$(\widetilde{H}_{\Lambda}H_{\Phi}C_{\Theta}-\widetilde{H}_{\Theta}H_{\Phi}C_{\Lambda}P_{\Lambda})f$",
    "nolonger": "we no longer have the equality in general",
    "collapse": r"$C_{\Lambda,\Psi}=C_{\Lambda}\oplus\Lambda C_{\Psi}\Lambda^{*}$",
    "int_a": r"$=A_{\Phi}^{\Theta,\Lambda}$",
    "int_b": r"$A_{\Phi}^{\Lambda,\Theta}=A_{\Phi^{*}}^{\Lambda}+\Lambda P_{\Psi}\Lambda^{*}\Phi^{*}P_{\Lambda}$",
    "oracle": r"$F_nx=\int_\mathbb{T} \overline{{z}}^n \mathbf{F}({z})x\,dm({z})$",
}

CATALOGUE: tuple[Check, ...] = (
    Check("laurent.lstar_involution", _A["lstar"], 1e-15, c_lstar_involution, reach="none"),
    Check("laurent.lgamma_involution", _A["lgamma_inv"], 1e-14, c_lgamma_involution, reach="none"),
    Check("laurent.gamma_symmetric_reflection", _A["tilde"], 1e-12, c_gamma_reflection, reach="none"),
    Check("laurent.parseval", _A["parseval"], 1e-12, c_parseval, reach="none"),
    Check("laurent.hs_adjoint", _A["hs"], 1e-13, c_hs_adjoint, reach="none"),
    Check("laurent.lmul_quadrature", _A["mult"], 1e-12, c_lmul_quadrature, reach="none"),
    Check("laurent.jm_gamma_real", _A["jm"], 1e-12, c_jm_gamma_real, reach="symbol"),
    Check("laurent.jm_reflected", _A["tilde"], 1e-12, c_jm_reflected, reach="symbol"),
    Check("laurent.jm_symmetric_witness", _A["jm"], 1e-3, c_jm_symmetric_witness, kind="lower", reach="symbol"),
    Check("inner.innerness", _A["inner"], 1e-12, c_innerness, reach="none"),
    Check("inner.gamma_symmetry", _A["gsym"], 1e-12, c_gamma_symmetry, reach="none"),
    Check("inner.uniq_commute", _A["uniq"], 1e-10, c_uniq_commute, reach="none"),
    Check("inner.lgamma_inner", _A["lgamma_inner"], 1e-12, c_lgamma_inner, reach="none"),
    Check("inner.divide_roundtrip", _A["divide"], 1e-11, c_divide_roundtrip, reach="none"),
    Check("inner.degree_additivity", _A["formal"], 0.5, c_degree_additivity, reach="none",
          applies=lambda ctx: ctx.s.exact),
    Check("window.halfspace", _A["pminus"], 1e-15, c_halfspace),
    Check("window.proj_model", _A["ptheta"], 1e-11, c_proj_model),
    Check("window.decomposition", _A["item1"], 1e-9, c_decomposition),
    Check("window.projection_split", _A["item2"], 1e-10, c_projection_split),
    Check("window.kernel_split", _A["item3"], 1e-9, c_kernel_split),
    Check("window.kernel_tilde_split", _A["item4"], 1e-9, c_kernel_tilde_split),
    Check("window.kernel_projection", _A["item5"], 1e-9, c_kernel_projection),
    Check("window.kernel_definition", _A["kdef"], 1e-9, c_kernel_definition),
    Check("window.reproducing", _A["repro"], 1e-9, c_reproducing),
    Check("window.p_theta_identities", _A["pid"], 1e-10, c_p_theta_identities),
    Check("window.kernel_density", _A["dense"], 1e-6, c_kernel_density),
    Check("window.decomp_split", _A["split"], 1e-10, c_decomp_split),
    Check("conj.j_tilde", _A["jtilde"], 1e-14, c_j_tilde),
    Check("conj.j_star", _A["jstar"], 1e-14, c_j_star),
    Check("conj.c_theta_conjugation", _A["cinv"], 1e-10, c_c_theta_conjugation),
    Check("conj.c_theta_nonsymmetric", _A["ciff"], 1e-2, c_c_theta_nonsymmetric, kind="lower", reach="none"),
    Check("conj.c_theta_intertwining", _A["cmz"], 1e-11, c_c_theta_intertwining),
    Check("conj.tau_theta", _A["tau"], 1e-10, c_tau),
    Check("conj.c_theta_factorization", _A["cfac"], 1e-10, c_c_theta_factorization),
    Check("conj.c_lambda_psi", _A["clp"], 1e-10, c_c_lambda_psi),
    Check("conj.canonical_criterion", _A["canon"], 1e-10, c_canonical),
    Check("conj.ctheta_item1", _A["ct1"], 1e-10, c_ctheta_item1),
    Check("conj.ctheta_item2", _A["ct2"], 1e-10, c_ctheta_item2),
    Check("conj.unitary_product_1", _A["up1"], 1e-10, c_unitary_product_1),
    Check("conj.unitary_product_2", _A["up2"], 1e-10, c_unitary_product_2),
    Check("conj.products_unitary", _A["unit"], 1e-10, c_products_unitary),
    Check("conj.extract_multiplier", _A["mult_u"], 1e-10, c_extract_multiplier),
    Check("conj.block_factorization", _A["block"], 1e-10, c_block_factorization),
    Check("ops.model_shift", _A["modl"], 1e-11, c_model_shift),
    Check("ops.matto_adjoint", _A["matto"], 1e-11, c_matto_adjoint, reach="symbol"),
    Check("ops.hankel_vanishing", _A["hankel"], 1e-15, c_hankel_vanishing, reach="symbol"),
    Check("ops.hankel_factorization", _A["hfac"], 1e-10, c_hankel_factorization, reach="symbol"),
    Check("ops.theorem_lt", _A["lt"], 1e-10, c_theorem_lt, reach="symbol"),
    Check("ops.theorem_lt_alt", _A["lt_alt"], 1e-12, c_theorem_lt_alt, reach="none"),
    Check("ops.lt_round_trip", _A["lt_rt"], 1e-9, c_lt_round_trip, reach="symbol"),
    Check("ops.eq412_symmetric", _A["e412s"], 1e-10, c_eq412_symmetric, reach="symbol"),
    Check("ops.eq412_counterexample", _A["e412c"], 1e-3, c_eq412_counterexample, kind="lower", reach="none"),
    Check("ops.scalar_reduction", _A["scalar"], 1e-10, c_scalar_reduction, reach="none"),
    Check("ops.defect_identity", _A["defect"], 1e-9, c_defect_identity, reach="symbol"),
    Check("ops.defect_witness", _A["nolonger"], 1e-3, c_defect_witness, kind="lower", reach="none"),
    Check("ops.defect_collapse", _A["collapse"], 1e-10, c_defect_collapse, reach="symbol"),
    Check("ops.intermediate_a", _A["int_a"], 1e-10, c_intermediate_a, reach="symbol"),
    Check("ops.intermediate_b", _A["int_b"], 1e-10, c_intermediate_b, reach="symbol"),
    Check("oracle.window_constructions", _A["oracle"], 1e-8, c_oracle, reach="symbol"),
)

CHECKS = {c.id: c for c in CATALOGUE}

GROUPS = {
    "laurent": "laurent.",
    "inner": "inner.",
    "window": "window.",
    "conj": "conj.",
    "ops": "ops.",
    "oracle": "oracle.",
}


def select_checks(names) -> list[Check]:
    """Resolve check ids, group names (``window``, ``conj``...) or ``all``, keeping catalogue order."""
    wanted = set()
    for name in names:
        if name == "all":
            wanted.update(CHECKS)
        elif name in GROUPS:
            wanted.update(c for c in CHECKS if c.startswith(GROUPS[name]))
        elif name in CHECKS:
            wanted.add(name)
        else:
            raise KeyError(name)
    return [c for c in CATALOGUE if c.id in wanted]


def required_radius(ctx: Context, checks) -> int:
    """Smallest radius meeting every selected check's margin, plus 4."""
    need = max([ctx.reach(c.reach) for c in checks] + [3 * ctx.mT + 2])
    return need + 4
