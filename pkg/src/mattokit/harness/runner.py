"""Scenario execution, parameter sweeps and the scalar demo."""

from __future__ import annotations

import csv
import io
import math
import time

import numpy as np

from ..conjugations import c_theta, is_conjugation_on
from ..inner import identity_inner, potapov_factor, inner_product_chain
from ..laurent import MatLaurent
from ..operators import defect_operators, eq412_defect, model_shift
from ..window import Frame, Window, proj_model
from .checks import CATALOGUE, Context, required_radius, select_checks
from .report import CheckRecord, Report
from .scenario import DEFAULT_TOL, Scenario, ScenarioError, substream

__all__ = ["run_scenario", "sweep", "SWEEP_PARAMS", "SWEEP_COLUMNS", "demo_scalar", "build_context"]


def effective_tol(check, s: Scenario) -> float:
    """Upper checks tighten proportionally when the scenario tolerance drops below the default."""
    if check.kind == "lower":
        return check.tol
    return check.tol * min(1.0, s.tol / DEFAULT_TOL)


def build_context(s: Scenario, checks=None) -> tuple[Context, list]:
    try:
        checks = select_checks(s.checks) if checks is None else checks
    except KeyError as exc:
        raise ScenarioError(f"unknown check id {exc.args[0]!r}") from None
    try:
        ctx = Context(s)
    except ValueError as exc:
        raise ScenarioError(str(exc)) from None
    checks = [c for c in checks if c.applicable(ctx)]
    N = required_radius(ctx, checks) if s.N == "auto" else s.N
    ctx.set_radius(N)
    return ctx, checks


def _run_one(check, ctx: Context, s: Scenario) -> CheckRecord:
    rng = substream(s.seed, check.id)
    tol = effective_tol(check, s)
    t0 = time.perf_counter()
    error = None
    try:
        defect = float(check.fn(ctx, rng))
    except Exception as exc:  # a raised check is a failed check, never a crash
        defect, error = math.inf, f"{type(exc).__name__}: {exc}"
    ms = (time.perf_counter() - t0) * 1e3
    if math.isnan(defect):
        defect = math.inf
    if check.kind == "lower":
        ok = math.isfinite(defect) and defect >= tol
    else:
        ok = defect < tol
    W = ctx.W
    return CheckRecord(check.id, check.anchor, defect, tol, ok, check.kind,
                       {"N": W.N, "d": W.d, "D": W.D}, ms, error)


def run_scenario(s: Scenario) -> Report:
    """Run the selected checks; deterministic in everything except runtimes."""
    ctx, checks = build_context(s)
    report = Report(seed=s.seed, scenario=_describe(s, ctx))
    for check in checks:
        report.records.append(_run_one(check, ctx, s))
    return report


def _describe(s: Scenario, ctx: Context) -> dict:
    return {
        "seed": s.seed,
        "d": s.d,
        "strategy": s.strategy,
        "degrees": list(s.degrees),
        "N": ctx.W.N,
        "D": ctx.W.D,
        "tol": s.tol,
        "phi_band": s.phi_band,
        "phi_scale": s.phi_scale,
        "zero_radius": s.zero_radius,
        "lambda_samples": [repr(complex(x)) for x in s.lambda_samples],
        "degrees_realized": [ctx.mL, ctx.mS, ctx.mT],
    }


# ---------------------------------------------------------------- sweeps

SWEEP_PARAMS = ("symbol-scale", "factor-zero-radius", "degree")

SWEEP_COLUMNS = (
    "param",
    "value",
    "N",
    "D",
    "lhs_norm",
    "lhs_minus_rhs",
    "collapse_defect",
    "lhs_minus_rhs_general_phi",
    "eq412_symmetric",
    "eq412_general",
    "c_lambda_psi_axioms",
)


def _sweep_point(s: Scenario) -> dict:
    ctx, _ = build_context(s.with_(checks=("ops",)), [c for c in CATALOGUE if c.id.startswith("ops.")])
    W, V = ctx.W, ctx.VT
    rng = substream(s.seed, "sweep.vectors")
    F = V @ _unit_columns(rng, V.shape[1], 24) if V.shape[1] else np.zeros((W.D, 0))

    def worst(X):
        return float(np.linalg.norm(X @ np.conj(F), axis=0).max()) if F.shape[1] else 0.0

    lhs, rhs = defect_operators(ctx.phi_sym, ctx.lam, ctx.psi, ctx.gamma, W)
    glhs, grhs = defect_operators(ctx.phi, ctx.lam, ctx.psi, ctx.gamma, W)
    clhs, crhs = defect_operators(ctx.phi_sym, ctx.theta, identity_inner(ctx.d), ctx.gamma, W)
    return {
        "N": W.N,
        "D": W.D,
        "lhs_norm": worst(lhs),
        "lhs_minus_rhs": worst(lhs - rhs) / (1.0 + ctx.phi_norm),
        "collapse_defect": max(worst(clhs), worst(crhs)),
        "lhs_minus_rhs_general_phi": worst(glhs - grhs),
        "eq412_symmetric": eq412_defect(ctx.phi_sym, ctx.theta, ctx.gamma, W),
        "eq412_general": eq412_defect(ctx.phi, ctx.theta, ctx.gamma, W),
        "c_lambda_psi_axioms": max(is_conjugation_on(ctx.CLP, V)),
    }


def _unit_columns(rng, r: int, count: int) -> np.ndarray:
    c = rng.standard_normal((r, count)) + 1j * rng.standard_normal((r, count))
    return c / np.linalg.norm(c, axis=0)


def _trunc_for(radius: float) -> int:
    """Expansion length keeping the rational-tier tail near 1e-13 (capped)."""
    if radius == 0:
        return 24
    return int(min(32, max(8, math.ceil(math.log(1e-13) / math.log(radius)))))


def sweep(s: Scenario, param: str, grid) -> list[dict]:
    """One row per grid value; columns are ``SWEEP_COLUMNS``."""
    if param not in SWEEP_PARAMS:
        raise ScenarioError(f"unknown sweep parameter {param!r}; expected one of {', '.join(SWEEP_PARAMS)}")
    rows = []
    for value in grid:
        if param == "symbol-scale":
            point = s.with_(phi_scale=float(value))
        elif param == "factor-zero-radius":
            point = s.with_(zero_radius=float(value), trunc=_trunc_for(float(value)))
        else:
            if float(value) != int(float(value)):
                raise ScenarioError(f"degree grid values must be integers, got {value}")
            point = s.with_(degrees=(s.degrees[0], int(float(value))))
        row = {"param": param, "value": value}
        row.update(_sweep_point(point))
        rows.append(row)
    return rows


def rows_to_csv(rows: list[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=SWEEP_COLUMNS, lineterminator="\n")
    w.writeheader()
    for row in rows:
        w.writerow({k: (repr(float(v)) if isinstance(v, (float, np.floating)) else v) for k, v in row.items()})
    return buf.getvalue()


# ---------------------------------------------------------------- scalar demo

def scalar_model(n: int):
    """``θ = z^n`` on ``C^1``: window, canonical frame ``1, z, ..., z^(n-1)`` and ``θ`` itself."""
    theta = inner_product_chain([potapov_factor(np.eye(1)) for _ in range(n)]) if n else identity_inner(1)
    W = Window(max(3 * n + 4, 4), 1)
    E = np.zeros((W.D, n), complex)
    for k in range(n):
        E[W.index(k, 0), k] = 1
    return theta, W, Frame(W, E)


def demo_scalar(n: int = 3, out=None, phis: int = 4, seed: int = 0) -> Report:
    """Scalar ``θ = z^n`` catalogue with explicit matrices printed to ``out``."""
    if n < 1:
        raise ScenarioError("scalar degree must be at least 1")
    write = (lambda text: print(text, file=out)) if out is not False else (lambda text: None)
    theta, W, E = scalar_model(n)
    report = Report(seed=seed, scenario={"scalar_degree": n, "N": W.N})
    window = {"N": W.N, "d": 1, "D": W.D}

    def add(cid, anchor, defect, tol, t0):
        report.records.append(CheckRecord(cid, anchor, float(defect), tol, float(defect) < tol, "upper", window,
                                          (time.perf_counter() - t0) * 1e3))

    t0 = time.perf_counter()
    P = proj_model(theta, W).matrix
    add("scalar.model_basis", "Let $P_{\\Theta}$ be the orthogonal projection",
        np.abs(P - E.projector()).max(), 1e-12, t0)

    t0 = time.perf_counter()
    S, _ = model_shift(theta, W)
    Sc = E.matrix.conj().T @ S.full.matrix @ E.matrix
    jordan = np.eye(n, k=-1)
    add("scalar.nilpotent_shift", "the model operators", np.abs(Sc - jordan).max(), 1e-12, t0)
    write(f"S_theta on span(1, z, ..., z^{n - 1}):")
    write(_fmt(Sc))

    t0 = time.perf_counter()
    C = c_theta(theta, None, W)
    Cc = E.matrix.conj().T @ C.matrix @ np.conj(E.matrix)
    flip = np.fliplr(np.eye(n))
    add("scalar.c_theta_flip", r"$({\mathbf{C}}_{\Theta}f)(z)=\Theta(z)\overline{z} \Gamma(f(z))$",
        np.abs(Cc - flip).max(), 1e-12, t0)
    write("C_theta basis action:")
    for k in range(n):
        j = int(np.argmax(np.abs(Cc[:, k])))
        write(f"  e_{k} -> e_{j}")

    t0 = time.perf_counter()
    rng = substream(seed, "demo.phi")
    rows = []
    for _ in range(phis):
        c = rng.standard_normal(2 * n + 1) + 1j * rng.standard_normal(2 * n + 1)
        phi = MatLaurent(c[:, None, None], -n, 1)
        rows.append(eq412_defect(phi, theta, None, W))
    add("scalar.eq412", r"every TTO on the model space $K_\theta$ is $C_\theta$-symmetric", max(rows), 1e-10, t0)
    write("eq412 defect per random symbol:")
    for r in rows:
        write(f"  {r:.3e}")
    write(report.to_text())
    return report


def _fmt(A: np.ndarray) -> str:
    def cell(x):
        x = complex(x)
        if abs(x.imag) < 1e-12:
            return f"{x.real:6.3f}"
        return f"{x.real:.3f}{x.imag:+.3f}j"
    return "\n".join("  [" + " ".join(cell(x) for x in row) + "]" for row in A)
