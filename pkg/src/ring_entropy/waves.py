"""Radial position and momentum waveforms and their densities.

Internally everything is dimensionless: z = r^2 / (2 r_eff^2) in
position space and xi = r_eff k in momentum space.  With these,

    R(r) = Rt(z) / r_eff,   Rt(z) = N z^(lam/2) e^(-z/2) L_n^lam(z),
    K(k) = r_eff Kt(xi),

where N = sqrt(n! / Gamma(n + lam + 1)) and both Rt and Kt are
normalized to one against dz and xi dxi respectively.  Kt is the Hankel
transform of Rt, written as a finite sum of Kummer functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, PrecisionLossError, RootNotBracketedError
from .model import DerivedParams, Orbital, RingSpec, derive
from .quadrature import gauss_laguerre_rule
from .specfun import (
    KUMMER_PRECISION_LIMIT,
    EvalResult,
    kummer_1f1_neg_array,
    laguerre_coeffs,
    laguerre_gen,
)

_LN2 = math.log(2.0)
_TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class RadialState:
    """Radial part of one orbital.

    ``laguerre_coefficients`` are the monomial coefficients of
    L_n^lam; ``log_norm`` is ln sqrt(n! / Gamma(n + lam + 1)).
    """

    orbital: Orbital
    params: DerivedParams
    laguerre_coefficients: np.ndarray
    log_norm: float

    @property
    def lam(self) -> float:
        return self.params.lam

    @property
    def n(self) -> int:
        return self.orbital.n

    @property
    def abs_m(self) -> int:
        return abs(self.orbital.m)


@dataclass(frozen=True)
class DensitySample:
    abscissa: float
    value: float


def radial_state(spec: RingSpec, orb: Orbital) -> RadialState:
    p = derive(spec, orb)
    coeffs = laguerre_coeffs(orb.n, p.lam)
    coeffs.setflags(write=False)
    log_norm = 0.5 * (math.lgamma(orb.n + 1) - math.lgamma(orb.n + p.lam + 1))
    return RadialState(orb, p, coeffs, log_norm)


# ---------------------------------------------------------------- position


def position_waveform(state: RadialState, z):
    """Dimensionless Rt(z), evaluated in log space."""
    z = np.asarray(z, dtype=float)
    lam = state.lam
    lag = laguerre_gen(state.n, lam, z)
    with np.errstate(divide="ignore"):
        log_mag = state.log_norm - 0.5 * z + np.log(np.abs(lag))
        if lam > 0:
            log_mag = log_mag + 0.5 * lam * np.log(z)
    out = np.sign(lag) * np.exp(log_mag)
    return out[()] if out.ndim == 0 else out


def radial_position(state: RadialState, r):
    """R_nm(r); normalized so that int R^2 r dr = 1."""
    r = np.asarray(r, dtype=float)
    if np.any(r < 0):
        raise DomainError("radius must be >= 0")
    r_eff = state.params.r_eff
    return position_waveform(state, r * r / (2.0 * r_eff * r_eff)) / r_eff


def position_density(state: RadialState, r):
    """rho(r) = R^2 / (2 pi)."""
    return radial_position(state, r) ** 2 / _TWO_PI


# ---------------------------------------------------------------- momentum


def _kummer_terms(state: RadialState):
    """(log|prefactor|, sign, a) for each Laguerre monomial."""
    lam, mu, n = state.lam, state.abs_m, state.n
    top = math.lgamma(n + lam + 1)
    terms = []
    for j in range(n + 1):
        a = j + 1 + 0.5 * (lam + mu)
        log_c = top - math.lgamma(j + lam + 1) - math.lgamma(n - j + 1) - math.lgamma(j + 1)
        log_pref = (
            state.log_norm + log_c + (j + 1 + 0.5 * lam) * _LN2 + math.lgamma(a) - math.lgamma(mu + 1)
        )
        terms.append((log_pref, (-1) ** j, a))
    return terms


def momentum_waveform(state: RadialState, xi, check: bool = True):
    """Dimensionless Kt(xi) and its absolute error estimate (arrays).

    Kt = N sum_j c_j 2^(j+1+lam/2) Gamma(a_j)/|m|! xi^|m| 1F1(a_j; |m|+1; -xi^2)
    with a_j = j + 1 + (lam + |m|)/2.  Kt is normalized, so an absolute
    error above ``KUMMER_PRECISION_LIMIT`` (and above that fraction of
    |Kt|) means the alternating sum lost too many digits.
    """
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(xi < 0):
        raise DomainError("wave number must be >= 0")
    mu = state.abs_m
    x = xi * xi
    with np.errstate(divide="ignore"):
        log_xi_mu = mu * np.log(xi) if mu else np.zeros_like(xi)
    total = np.zeros_like(xi)
    mag = np.zeros_like(xi)
    err = np.zeros_like(xi)
    for log_pref, sign, a in _kummer_terms(state):
        f, fe = kummer_1f1_neg_array(a, mu + 1.0, x, check=False)
        scale = np.exp(log_pref + log_xi_mu)
        term = sign * scale * f
        total += term
        mag += np.abs(term)
        err += scale * fe
    err += 4.0 * np.finfo(float).eps * (state.n + 1) * mag
    if check:
        bad = (err > KUMMER_PRECISION_LIMIT) & (err > KUMMER_PRECISION_LIMIT * np.abs(total))
        if np.any(bad):
            i = int(np.argmax(bad))
            raise PrecisionLossError(
                f"momentum waveform lost precision at xi = {xi[i]:.6g} (error {err[i]:.2e})",
                condition=float(mag[i] / max(abs(total[i]), 1e-300)),
            )
    return total, err


def radial_momentum(state: RadialState, k: float) -> EvalResult:
    """K_nm(k); normalized so that int K^2 k dk = 1."""
    if not k >= 0:
        raise DomainError("wave number must be >= 0")
    r_eff = state.params.r_eff
    v, e = momentum_waveform(state, r_eff * k)
    return EvalResult(float(r_eff * v[0]), float(r_eff * e[0]))


def momentum_density(state: RadialState, k):
    """gamma(k) = K^2 / (2 pi) (array-capable)."""
    k = np.asarray(k, dtype=float)
    r_eff = state.params.r_eff
    v, _ = momentum_waveform(state, r_eff * k)
    out = (r_eff * v) ** 2 / _TWO_PI
    return out[0] if k.ndim == 0 else out


def momentum_density_zero(state: RadialState) -> float:
    """gamma_n(k = 0) in closed form; zero for |m| >= 1."""
    if state.abs_m:
        return 0.0
    lam, n = state.lam, state.n
    h = n // 2
    r_eff = state.params.r_eff
    log_val = (
        2.0 * math.log(r_eff)
        + (lam + 1) * _LN2
        - math.log(math.pi)
        + math.lgamma(n + 1)
        - math.lgamma(n + lam + 1)
        + 2.0 * math.lgamma(h + 1 + 0.5 * lam)
        - 2.0 * math.lgamma(h + 1)
    )
    return math.exp(log_val)


# ---------------------------------------------------------------- checks


def overlap_matrix(spec: RingSpec, m: int, n_max: int, nodes: int = 64) -> np.ndarray:
    """Matrix of int R_{n'm} R_{nm} r dr for n, n' <= n_max.

    In z the integrand is N N' z^lam e^-z L_n L_n', so a generalized
    Gauss-Laguerre rule with s = lam integrates it exactly.
    """
    if not 0 <= n_max <= 6:
        raise DomainError("n_max must be in [0, 6]")
    states = [radial_state(spec, Orbital(n, m)) for n in range(n_max + 1)]
    lam = states[0].lam
    rule = gauss_laguerre_rule(nodes, lam)
    lag = [laguerre_gen(s.n, lam, rule.nodes) for s in states]
    out = np.empty((n_max + 1, n_max + 1))
    for i, si in enumerate(states):
        for j, sj in enumerate(states):
            w = np.exp(rule.log_weights + si.log_norm + sj.log_norm)
            out[i, j] = math.fsum(w * lag[i] * lag[j])
    return out


def _peak_equation(n, lam, z):
    lower = laguerre_gen(n - 1, lam + 1, z) if n >= 1 else 0.0
    return (lam - z) * laguerre_gen(n, lam, z) - 2.0 * z * lower


def position_density_peak(state: RadialState) -> tuple[float, float]:
    """Global maximizer of rho in z and the maximal density.

    Stationary points of z^lam e^-z L^2 other than nodes solve
    (lam - z) L_n^lam(z) - 2 z L_{n-1}^{lam+1}(z) = 0; every sign change
    on [0, 2(2n + lam + 1) + 10] is refined by Brent's method.
    """
    n, lam = state.n, state.lam
    if n > 3:
        raise DomainError("peak search supports n <= 3")
    if n == 0:
        candidates = [lam]
    else:
        upper = 2.0 * (2 * n + lam + 1) + 10.0
        grid = np.linspace(0.0, upper, 4001)
        g = _peak_equation(n, lam, grid)
        candidates = [0.0] if lam == 0 else []
        for i in np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) < 0)[0]:
            candidates.append(brentq(lambda t: _peak_equation(n, lam, t), grid[i], grid[i + 1], xtol=1e-15, rtol=1e-15))
        candidates += [float(t) for t in grid[1:-1][g[1:-1] == 0]]
        if not candidates:
            raise RootNotBracketedError("no stationary point bracketed for the position density")
    rt = np.abs(position_waveform(state, np.asarray(candidates)))
    i = int(np.argmax(rt))
    r_eff = state.params.r_eff
    rho_max = float(rt[i] ** 2 / (_TWO_PI * r_eff * r_eff))
    return float(candidates[i]), rho_max
