"""Quadrature on the half line.

Generalized Gauss-Laguerre (and Gauss-Jacobi) rules built from the
Jacobi matrix, an adaptive Gauss-Legendre panel integrator, and a
cutoff-doubling integrator for integrands with algebraic tails that
detects divergence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.linalg import LinAlgError, eigvalsh_tridiagonal

from .errors import (
    DivergenceError,
    DomainError,
    EvaluationError,
    RuleConstructionError,
    ToleranceNotMetError,
)
from .specfun import EvalResult

DEFAULT_NODES = 128
MAX_NODES = 256
# successive doubling increments growing at least this fast mean the
# tail decays no faster than xi^-1.1
DIVERGENCE_RATIO = 2.0 ** -0.1
_RESCALE = 1e150

_GL_HI = np.polynomial.legendre.leggauss(20)
_GL_LO = np.polynomial.legendre.leggauss(10)


@dataclass(frozen=True)
class QuadratureRule:
    """N-point rule for int_0^inf x^s e^-x f(x) dx (or a Jacobi analogue)."""

    nodes: np.ndarray
    weights: np.ndarray
    weight_exponent: float
    log_weights: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.nodes)


@dataclass(frozen=True)
class TailPolicy:
    cutoff: float
    algebraic_exponent: float
    doubling_limit: int = 40


def _golub_welsch(diag, off2, log_mu0):
    """Nodes and log-weights from the monic recurrence a_k, b_k^2.

    Weights come from the Christoffel function 1/w_i = sum_k p_k(x_i)^2
    of the orthonormal polynomials, evaluated in rescaled form so that
    the tiny outer weights keep their relative accuracy.
    """
    n = len(diag)
    off = np.sqrt(off2)
    try:
        x = eigvalsh_tridiagonal(diag, off[: n - 1]) if n > 1 else np.array(diag, dtype=float)
    except LinAlgError as exc:  # pragma: no cover - LAPACK failure
        raise RuleConstructionError(str(exc)) from exc
    if not np.all(np.isfinite(x)):
        raise RuleConstructionError("non-finite eigenvalues in Jacobi matrix")
    x = np.sort(x)

    def _run(x):
        p_prev = np.zeros_like(x)
        p = np.ones_like(x)
        d_prev = np.zeros_like(x)
        d = np.zeros_like(x)
        log_scale = np.full_like(x, -0.5 * log_mu0)
        ssq = np.ones_like(x)
        for k in range(n):
            b_next = off[k]
            p_new = ((x - diag[k]) * p - (off[k - 1] if k else 0.0) * p_prev) / b_next
            d_new = ((x - diag[k]) * d + p - (off[k - 1] if k else 0.0) * d_prev) / b_next
            p_prev, p, d_prev, d = p, p_new, d, d_new
            if k < n - 1:
                ssq = ssq + p * p
            big = np.abs(p) > _RESCALE
            if np.any(big):
                f = np.where(big, 1.0 / _RESCALE, 1.0)
                p, p_prev, d, d_prev = p * f, p_prev * f, d * f, d_prev * f
                ssq = ssq * f * f
                log_scale = log_scale - np.log(f)
        return p, d, ssq, log_scale

    for _ in range(2):
        p, d, _, _ = _run(x)
        with np.errstate(invalid="ignore", divide="ignore"):
            step = np.where(d != 0, p / d, 0.0)
        x = x - step
    _, _, ssq, log_scale = _run(x)
    log_w = -(np.log(ssq) + 2.0 * log_scale)
    if not (np.all(np.isfinite(x)) and np.all(np.isfinite(log_w))):
        raise RuleConstructionError("rule construction produced non-finite values")
    return x, log_w


@lru_cache(maxsize=512)
def _laguerre_cached(n, s):
    k = np.arange(n, dtype=float)
    diag = 2.0 * k + s + 1.0
    kk = np.arange(1, n + 1, dtype=float)
    off2 = kk * (kk + s)
    x, log_w = _golub_welsch(diag, off2, math.lgamma(s + 1.0))
    if np.any(x <= 0) or np.any(np.diff(x) <= 0):
        raise RuleConstructionError("Laguerre nodes not strictly increasing and positive")
    with np.errstate(under="ignore", over="ignore"):
        w = np.exp(log_w)
    for arr in (x, w, log_w):
        arr.setflags(write=False)
    return QuadratureRule(x, w, float(s), log_w)


def gauss_laguerre_rule(n: int, s: float = 0.0) -> QuadratureRule:
    """N-point generalized Gauss-Laguerre rule for weight x^s e^-x.

    Weights below the double range (outer nodes of rules with N above
    roughly 180) underflow to zero; ``log_weights`` stays finite.
    """
    if not 1 <= n <= MAX_NODES:
        raise DomainError(f"rule size must be in [1, {MAX_NODES}], got {n}")
    if not s > -1:
        raise DomainError("weight exponent must exceed -1")
    return _laguerre_cached(int(n), float(s))


@lru_cache(maxsize=512)
def gauss_jacobi_rule(n: int, alpha: float, beta: float) -> QuadratureRule:
    """N-point Gauss-Jacobi rule on [-1, 1] for weight (1-t)^alpha (1+t)^beta."""
    if not (alpha > -1 and beta > -1):
        raise DomainError("Jacobi exponents must exceed -1")
    k = np.arange(n, dtype=float)
    ab = alpha + beta
    with np.errstate(invalid="ignore", divide="ignore"):
        diag = (beta * beta - alpha * alpha) / ((2 * k + ab) * (2 * k + ab + 2))
    diag[0] = (beta - alpha) / (ab + 2)
    kk = np.arange(1, n + 1, dtype=float)
    c = 2 * kk + ab
    off2 = 4 * kk * (kk + alpha) * (kk + beta) * (kk + ab) / (c * c * (c + 1) * (c - 1))
    log_mu0 = (
        (ab + 1) * math.log(2.0)
        + math.lgamma(alpha + 1)
        + math.lgamma(beta + 1)
        - math.lgamma(ab + 2)
    )
    x, log_w = _golub_welsch(diag, off2, log_mu0)
    with np.errstate(under="ignore", over="ignore"):
        w = np.exp(log_w)
    return QuadratureRule(x, w, float(beta), log_w)


def integrate_weighted(f, rule: QuadratureRule) -> EvalResult:
    """sum_i w_i f(x_i) with an error estimate from the half-order rule."""
    vals = np.asarray(f(rule.nodes), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise EvaluationError("integrand is not finite at a quadrature node")
    value = math.fsum(rule.weights * vals)
    n = len(rule)
    if n >= 2:
        half = gauss_laguerre_rule(n // 2, rule.weight_exponent)
        hv = np.asarray(f(half.nodes), dtype=float)
        err = abs(value - math.fsum(half.weights * hv)) if np.all(np.isfinite(hv)) else abs(value)
    else:
        err = abs(value)
    return EvalResult(value, err)


def _panel_sums(f, a, b):
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    xh = mid[:, None] + half[:, None] * _GL_HI[0][None, :]
    xl = mid[:, None] + half[:, None] * _GL_LO[0][None, :]
    pts = np.concatenate([xh.ravel(), xl.ravel()])
    vals = np.asarray(f(pts), dtype=float)
    if not np.all(np.isfinite(vals)):
        bad = pts[~np.isfinite(vals)][0]
        raise EvaluationError(f"integrand is not finite at x = {bad!r}")
    vh = vals[: xh.size].reshape(xh.shape)
    vl = vals[xh.size:].reshape(xl.shape)
    hi = half * (vh @ _GL_HI[1])
    lo = half * (vl @ _GL_LO[1])
    return hi, np.abs(hi - lo)


def integrate_adaptive(f, breakpoints, rel_tol=1e-11, abs_tol=0.0, max_rounds=60):
    """Adaptive 20/10-point Gauss-Legendre panels over [bp[0], bp[-1]].

    ``f`` must accept and return numpy arrays.  Panels whose error
    estimate exceeds their share of the target are bisected, all in one
    vectorized call per round.
    """
    bp = np.asarray(breakpoints, dtype=float)
    a, b = bp[:-1].copy(), bp[1:].copy()
    keep = b > a
    a, b = a[keep], b[keep]
    if a.size == 0:
        return EvalResult(0.0, 0.0, {"panels": 0})
    hi, err = _panel_sums(f, a, b)
    for _ in range(max_rounds):
        total = math.fsum(hi)
        target = max(abs_tol, rel_tol * abs(total))
        if err.sum() <= target:
            break
        width = b - a
        split = (err > target / len(a)) & (width > 1e-13 * max(1.0, np.abs(b).max()))
        if not np.any(split):
            break
        mid = 0.5 * (a[split] + b[split])
        na = np.concatenate([a[split], mid])
        nb = np.concatenate([mid, b[split]])
        nh, ne = _panel_sums(f, na, nb)
        a = np.concatenate([a[~split], na])
        b = np.concatenate([b[~split], nb])
        hi = np.concatenate([hi[~split], nh])
        err = np.concatenate([err[~split], ne])
    total = math.fsum(hi)
    return EvalResult(total, float(err.sum()), {"panels": int(a.size)})


def _initial_breakpoints(cutoff, extra=()):
    pts = [0.0] + [cutoff * 2.0 ** -j for j in range(12, -1, -1)]
    pts += [float(e) for e in extra if 0 < e < cutoff]
    return np.unique(pts)


def integrate_algebraic_tail(f, policy: TailPolicy, tol: float = 1e-10, breakpoints=()) -> EvalResult:
    """int_0^inf f for f continuous and decaying like xi^-p.

    The body [0, X] is integrated adaptively and the tail is estimated
    as f(X) X / (p - 1).  X is doubled until the tail-corrected value
    settles to ``tol`` (relative); the last two values are then
    Richardson-combined, assuming a residual proportional to X^-(p+1).
    Divergence is declared when the increment per doubling stops
    shrinking (ratio at or above ``DIVERGENCE_RATIO``) while the
    tail-corrected value also fails to settle over three doublings; the
    error carries the last increment growth ratio.
    """
    p = float(policy.algebraic_exponent)
    cutoff = float(policy.cutoff)
    if not cutoff > 0:
        raise DomainError("cutoff must be positive")

    def tail(x):
        if p <= 1:
            return 0.0
        fx = float(np.asarray(f(np.array([x])), dtype=float)[0])
        if not math.isfinite(fx):
            raise EvaluationError(f"integrand is not finite at x = {x!r}")
        return fx * x / (p - 1.0)

    body = integrate_adaptive(f, _initial_breakpoints(cutoff, breakpoints), rel_tol=0.05 * tol)
    base = body.value
    quad_err = body.abs_error_estimate
    x = cutoff
    q_prev = base + tail(x)
    inc_prev = None
    ratios = []
    change_ratios = []
    change_prev = None
    last_change = math.inf
    for k in range(policy.doubling_limit):
        piece = integrate_adaptive(
            f, np.geomspace(x, 2 * x, 5), rel_tol=0.05 * tol, abs_tol=0.01 * tol * abs(base)
        )
        inc = piece.value
        quad_err += piece.abs_error_estimate
        base += inc
        x *= 2.0
        q = base + tail(x)
        change = abs(q - q_prev)
        last_change = change / max(abs(q), 1e-300)
        if inc_prev is not None and inc_prev != 0.0:
            ratios.append(inc / inc_prev)
        if change_prev:
            change_ratios.append(change / change_prev)
        # divergent: raw increments and tail-corrected changes both stall
        if (
            last_change > tol
            and ratios
            and ratios[-1] >= DIVERGENCE_RATIO
            and len(change_ratios) >= 3
            and all(r >= DIVERGENCE_RATIO for r in change_ratios[-3:])
        ):
            raise DivergenceError(
                f"integral grows by a factor {ratios[-1]:.4f} per cutoff doubling "
                f"(cutoff {x:.3g}); tail decays no faster than xi^-1",
                growth_ratio=ratios[-1],
            )
        converged = last_change <= tol or inc == 0.0
        if converged and k >= 1:
            if p > 1:
                rho = 2.0 ** -(p + 1.0)
                value = (q - rho * q_prev) / (1.0 - rho)
            else:
                value = q
            err = abs(value - q) + quad_err + 0.5 * abs(q - q_prev)
            return EvalResult(
                value,
                err,
                {
                    "cutoff": x,
                    "doublings": k + 1,
                    "last_change": last_change,
                    "growth_ratio": ratios[-1] if ratios else 0.0,
                },
            )
        q_prev, inc_prev, change_prev = q, inc, change
    if ratios and ratios[-1] >= DIVERGENCE_RATIO:
        raise DivergenceError(
            f"no convergence after {policy.doubling_limit} doublings; "
            f"growth ratio {ratios[-1]:.4f}",
            growth_ratio=ratios[-1],
        )
    raise ToleranceNotMetError(
        f"tail integral not settled to {tol:g} after {policy.doubling_limit} doublings "
        f"(last relative change {last_change:.2e})",
        value=q_prev,
        abs_error_estimate=abs(q_prev) * last_change,
    )
