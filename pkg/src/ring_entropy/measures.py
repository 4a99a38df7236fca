"""Renyi, Tsallis, Shannon and Onicescu measures in both spaces.

With the dimensionless waveforms of :mod:`ring_entropy.waves`,

    R_rho(alpha)   =  2 ln r_eff + ln 2 pi + ln I_rho(alpha) / (1 - alpha),
    R_gamma(alpha) = -2 ln r_eff + ln 2 pi + ln I_gamma(alpha) / (1 - alpha),

    I_rho   = int_0^inf |Rt(z)|^(2 alpha) dz,
    I_gamma = int_0^inf |Kt(xi)|^(2 alpha) xi dxi.

The uniform field therefore enters only through the +-2 ln r_eff terms
and the integrals, which depend on (n, lambda, |m|, alpha) alone, are
cached.  Tsallis values reuse the same integrals through
T = (1 - exp((1 - alpha) R)) / (alpha - 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import (
    BelowThresholdError,
    DomainError,
    UnknownKindError,
    UnsupportedOrbitalError,
)
from .model import DerivedParams, Orbital, RingSpec, alpha_threshold, derive
from .quadrature import (
    DEFAULT_NODES,
    TailPolicy,
    gauss_jacobi_rule,
    gauss_laguerre_rule,
    integrate_adaptive,
    integrate_algebraic_tail,
)
from .specfun import EULER_GAMMA, EvalResult, digamma, laguerre_coeffs, laguerre_gen, polygamma
from .waves import (
    RadialState,
    momentum_density_zero,
    momentum_waveform,
    position_density_peak,
    radial_state,
)

LN_2PI = math.log(2.0 * math.pi)
SHANNON_WINDOW = 1e-4
MOMENTUM_TOL = 1e-11
PANEL_LOG_TOL = 1e-9
SHANNON_TOL = 1e-12
UNITS = "natural units hbar = m* = 1; lengths in (hbar/(m* omega0))^(1/2) scale set by omega0"
TSALLIS_NOTE = (
    "Tsallis entropy of a continuous density mixes dimensionful terms; "
    "the value is a formal representation in the stated units"
)


class Method(str, Enum):
    CLOSED_FORM = "closed_form"
    QUADRATURE = "quadrature"
    LIMIT_SERIES = "limit_series"


@dataclass(frozen=True)
class EntropyValue:
    value: float
    abs_error_estimate: float
    method: Method
    metadata: dict = field(default_factory=dict, compare=False)

    def __float__(self):
        return float(self.value)


def _meta(spec: RingSpec, orb: Orbital, **extra):
    p = derive(spec, orb)
    out = {"r_eff": p.r_eff, "omega0": spec.omega0, "units": UNITS, "lambda": p.lam}
    out.update(extra)
    return out


def _check_alpha(alpha):
    if not (alpha > 0 and math.isfinite(alpha)):
        raise DomainError(f"alpha must be positive and finite, got {alpha!r}")


# ------------------------------------------------------------ position side


def _position_closed_log_integral(lam, alpha):
    """ln I_rho for n = 0: Gamma(alpha lam + 1) / (alpha^(alpha lam + 1) Gamma(lam + 1)^alpha)."""
    return math.lgamma(alpha * lam + 1) - (alpha * lam + 1) * math.log(alpha) - alpha * math.lgamma(lam + 1)


def _logsumexp(parts):
    arr = np.concatenate([np.ravel(p) for p in parts])
    top = arr.max()
    return float(top + math.log(math.fsum(np.exp(arr - top))))


def _position_panel_sum(n, lam, alpha, nodes):
    """ln int_0^inf u^s e^-u |L_n^lam(u/alpha)|^(2 alpha) du, s = alpha lam.

    The nodes of |L|^(2 alpha) at u = alpha z_i split the half line;
    each piece carries its endpoint powers in a Gauss-Jacobi weight and
    the unbounded piece a generalized Gauss-Laguerre weight.
    """
    s, q = alpha * lam, 2.0 * alpha
    if n == 0:
        rule = gauss_laguerre_rule(nodes, s)
        return _logsumexp([rule.log_weights])
    zeta = alpha * gauss_laguerre_rule(n, lam).nodes
    log_lead = q * (-math.lgamma(n + 1) - n * math.log(alpha))
    parts = []

    def log_rest(u, skip):
        out = np.zeros_like(u)
        for j, zj in enumerate(zeta):
            if j not in skip:
                out += q * np.log(np.abs(u - zj))
        return out

    rule = gauss_jacobi_rule(nodes, q, s)
    h = 0.5 * zeta[0]
    u = h * (1.0 + rule.nodes)
    parts.append(rule.log_weights + (s + q + 1) * math.log(h) - u + log_rest(u, {0}))
    if n > 1:
        rule = gauss_jacobi_rule(nodes, q, q)
        for i in range(n - 1):
            h = 0.5 * (zeta[i + 1] - zeta[i])
            u = zeta[i] + h * (1.0 + rule.nodes)
            parts.append(rule.log_weights + (2 * q + 1) * math.log(h) - u + s * np.log(u) + log_rest(u, {i, i + 1}))
    rule = gauss_laguerre_rule(nodes, q)
    u = zeta[-1] + rule.nodes
    parts.append(rule.log_weights - zeta[-1] + s * np.log(u) + log_rest(u, {n - 1}))
    return log_lead + _logsumexp(parts)


@lru_cache(maxsize=8192)
def _position_log_integral(n, lam, alpha, method="auto"):
    """(ln I_rho, absolute error of ln I_rho, method)."""
    log_norm2 = math.lgamma(n + 1) - math.lgamma(n + lam + 1)
    pref = alpha * log_norm2 - (alpha * lam + 1) * math.log(alpha)
    if n == 0 and method == "auto":
        v = _position_closed_log_integral(lam, alpha)
        return v, 8 * np.finfo(float).eps * (1 + abs(v) + abs(math.lgamma(alpha * lam + 1))), Method.CLOSED_FORM
    hi = _position_panel_sum(n, lam, alpha, DEFAULT_NODES)
    lo = _position_panel_sum(n, lam, alpha, DEFAULT_NODES // 2)
    err = abs(hi - lo) + 8 * np.finfo(float).eps * (1 + abs(hi))
    if err > PANEL_LOG_TOL:
        # fixed rules cannot resolve the sharp peaks of large powers
        v, e = _position_log_integral_peaks(n, lam, alpha, log_norm2)
        if e < err:
            return v, e, Method.QUADRATURE
    return pref + hi, err, Method.QUADRATURE


def _position_log_integral_peaks(n, lam, alpha, log_norm2):
    """ln int (Rt^2)^alpha dz by adaptive panels anchored at the lobe maxima."""
    zeros = gauss_laguerre_rule(n, lam).nodes
    z_hi = zeros[-1] + 2.0 * lam + 60.0

    def log_rt2(z):
        with np.errstate(divide="ignore"):
            lag = np.log(np.abs(laguerre_gen(n, lam, z)))
            zl = lam * np.log(z) if lam > 0 else 0.0
        return log_norm2 + zl - z + 2.0 * lag

    grid = np.linspace(0.0, z_hi, 20_001)
    g = log_rt2(grid)
    g_max = float(np.max(g))
    inner = np.flatnonzero((g[1:-1] >= g[:-2]) & (g[1:-1] >= g[2:])) + 1
    width = math.sqrt(2.0 * (2 * n + lam + 1) / alpha)
    pts = [0.0, z_hi, *zeros]
    for z in grid[inner]:
        pts.extend(z + width * np.array([-12.0, -4.0, -1.0, 0.0, 1.0, 4.0, 12.0]))
    bp = np.unique(np.clip(pts, 0.0, z_hi))

    def f(z):
        with np.errstate(under="ignore"):
            return np.exp(alpha * (log_rt2(z) - g_max))

    res = integrate_adaptive(f, bp, rel_tol=1e-12, max_rounds=24)
    return alpha * g_max + math.log(res.value), res.abs_error_estimate / res.value + 1e-13


@lru_cache(maxsize=1024)
def _position_shannon_dimless(n, lam):
    """-int Rt^2 ln Rt^2 dz and its error estimate."""
    if n == 0:
        v = math.lgamma(lam + 1) + lam - lam * float(digamma(lam + 1)) + 1.0
        return v, 16 * np.finfo(float).eps * (1 + abs(v)), Method.CLOSED_FORM
    log_n2 = math.lgamma(n + 1) - math.lgamma(n + lam + 1)

    def f(z):
        lag = laguerre_gen(n, lam, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            lg = log_n2 - z + 2.0 * np.log(np.abs(lag))
            if lam > 0:
                lg = lg + lam * np.log(z)
            val = np.exp(lg) * lg
        return np.where(np.isfinite(lg), val, 0.0)

    roots = gauss_laguerre_rule(n, lam).nodes
    top = 2.0 * (2 * n + lam + 1) + 10.0
    bps = np.unique(np.concatenate([[0.0], roots, [0.5 * lam, top, 2 * top, 4 * top, 4 * top + 800.0]]))
    res = integrate_adaptive(f, bps, rel_tol=SHANNON_TOL)
    return -res.value, res.abs_error_estimate + 1e-15, Method.QUADRATURE


def renyi_position(spec: RingSpec, orb: Orbital, alpha: float, method: str = "auto") -> EntropyValue:
    """Position Renyi entropy R_rho(alpha).

    ``method="quadrature"`` forces the quadrature path even when a
    closed form exists (n = 0).
    """
    _check_alpha(alpha)
    p = derive(spec, orb)
    base = 2.0 * p.ln_r_eff + LN_2PI
    if alpha == 1.0 or (abs(alpha - 1.0) < SHANNON_WINDOW and not (orb.n == 0 and method == "auto")):
        s = shannon(spec, orb, "position")
        return EntropyValue(
            s.value,
            s.abs_error_estimate + abs(alpha - 1.0) * (1.0 + abs(s.value)),
            s.method,
            {**s.metadata, "shannon_branch": True},
        )
    log_i, err, how = _position_log_integral(orb.n, p.lam, float(alpha), method)
    val = base + log_i / (1.0 - alpha)
    return EntropyValue(val, err / abs(1.0 - alpha), how, _meta(spec, orb))


def position_power_integral(spec: RingSpec, orb: Orbital, alpha: float) -> float:
    """int rho^alpha d^2r."""
    _check_alpha(alpha)
    p = derive(spec, orb)
    if alpha == 1.0:
        return 1.0
    log_i, _, _ = _position_log_integral(orb.n, p.lam, float(alpha))
    return math.exp(log_i + (1.0 - alpha) * (2.0 * p.ln_r_eff + LN_2PI))


# ------------------------------------------------------------ momentum side


def _is_gaussian_dot(spec: RingSpec, orb: Orbital) -> bool:
    return spec.a == 0.0 and spec.nu == 0.0 and orb.n == 0


def _momentum_cutoff(n, lam, abs_m):
    return 4.0 + 2.0 * math.sqrt(2 * n + lam + abs_m + 1.0)


def _momentum_breakpoints(n, lam, abs_m):
    x0 = _momentum_cutoff(n, lam, abs_m)
    return np.linspace(0.0, x0, 9)[1:-1]


@lru_cache(maxsize=8192)
def _momentum_log_integral(n, lam, abs_m, alpha, tol):
    """EvalResult for ln I_gamma (absolute error on the logarithm)."""
    state = _dimless_state(n, lam, abs_m)
    q = 2.0 * alpha
    x0 = _momentum_cutoff(n, lam, abs_m)
    grid = np.linspace(0.0, x0, 801)
    amp = np.abs(momentum_waveform(state, grid)[0])
    # scale by the peak so large powers neither overflow nor underflow
    log_peak = math.log(float(amp.max()))
    inner = np.flatnonzero((amp[1:-1] >= amp[:-2]) & (amp[1:-1] >= amp[2:])) + 1
    width = 1.0 / math.sqrt(q)
    extra = [z + width * np.array([-6.0, -2.0, 0.0, 2.0, 6.0]) for z in grid[inner]]
    bp = np.concatenate([_momentum_breakpoints(n, lam, abs_m), *extra]) if extra else _momentum_breakpoints(
        n, lam, abs_m
    )
    bp = np.unique(bp[(bp > 0.0) & (bp < x0)])

    def f(xi):
        kt, _ = momentum_waveform(state, xi)
        with np.errstate(divide="ignore", under="ignore"):
            return xi * np.exp(q * (np.log(np.abs(kt)) - log_peak))

    policy = TailPolicy(x0, q * (2.0 + lam) - 1.0)
    res = integrate_algebraic_tail(f, policy, tol, breakpoints=bp)
    info = dict(res.info)
    info["algebraic_exponent"] = policy.algebraic_exponent
    return EvalResult(q * log_peak + math.log(res.value), res.abs_error_estimate / res.value, info)


@lru_cache(maxsize=256)
def _dimless_state(n, lam, abs_m):
    """State with r_eff = 1; Kt depends on (n, lam, |m|) only."""
    coeffs = laguerre_coeffs(n, lam)
    coeffs.setflags(write=False)
    params = DerivedParams(0.0, 0.5, 1.0, lam, float(abs_m))
    log_norm = 0.5 * (math.lgamma(n + 1) - math.lgamma(n + lam + 1))
    return RadialState(Orbital(n, abs_m), params, coeffs, log_norm)


def _require_threshold(spec, orb, alpha):
    th = alpha_threshold(spec, orb)
    if not alpha > th:
        raise BelowThresholdError(
            f"momentum measure at alpha = {alpha:g} does not exist; threshold is {th:.10g}",
            alpha=alpha,
            threshold=th,
        )


def momentum_power_integral(
    spec: RingSpec, orb: Orbital, alpha: float, enforce_threshold: bool = True, tol: float = MOMENTUM_TOL
) -> EvalResult:
    """Dimensionless I_gamma(alpha) = int |Kt|^(2 alpha) xi dxi.

    With ``enforce_threshold=False`` the integrator itself is asked to
    decide convergence; below the threshold it raises ``DivergenceError``.
    """
    _check_alpha(alpha)
    if enforce_threshold:
        _require_threshold(spec, orb, alpha)
    p = derive(spec, orb)
    res = _momentum_log_integral(orb.n, p.lam, abs(orb.m), float(alpha), tol)
    val = math.exp(res.value)
    return EvalResult(val, val * res.abs_error_estimate, res.info)


def _qd_log_ratio(abs_m, alpha):
    """ln[Gamma(|m| alpha + 1) / ((|m|!)^alpha alpha^(|m| alpha + 1))]."""
    return math.lgamma(abs_m * alpha + 1) - alpha * math.lgamma(abs_m + 1) - (abs_m * alpha + 1) * math.log(alpha)


@lru_cache(maxsize=1024)
def _momentum_shannon_dimless(n, lam, abs_m):
    state = _dimless_state(n, lam, abs_m)

    def f(xi):
        kt, _ = momentum_waveform(state, xi)
        k2 = kt * kt
        with np.errstate(divide="ignore", invalid="ignore"):
            v = xi * k2 * np.log(k2)
        return np.where(k2 > 0, v, 0.0)

    policy = TailPolicy(_momentum_cutoff(n, lam, abs_m), 3.0 + 2.0 * lam)
    res = integrate_algebraic_tail(f, policy, SHANNON_TOL, breakpoints=_momentum_breakpoints(n, lam, abs_m))
    return -res.value, res.abs_error_estimate


def renyi_momentum(spec: RingSpec, orb: Orbital, alpha: float) -> EntropyValue:
    """Momentum Renyi entropy R_gamma(alpha); requires alpha > alpha_threshold."""
    _check_alpha(alpha)
    _require_threshold(spec, orb, alpha)
    p = derive(spec, orb)
    base = -2.0 * p.ln_r_eff + LN_2PI
    if _is_gaussian_dot(spec, orb) and alpha != 1.0:
        v = -2.0 * p.ln_r_eff + math.log(math.pi / 2) + _qd_log_ratio(abs(orb.m), alpha) / (1.0 - alpha)
        return EntropyValue(v, 1e-15 * (1 + abs(v)) / min(1.0, abs(1 - alpha)), Method.CLOSED_FORM, _meta(spec, orb))
    if abs(alpha - 1.0) < SHANNON_WINDOW:
        s = shannon(spec, orb, "momentum")
        return EntropyValue(
            s.value,
            s.abs_error_estimate + abs(alpha - 1.0) * (1.0 + abs(s.value)),
            s.method,
            {**s.metadata, "shannon_branch": True},
        )
    res = _momentum_log_integral(orb.n, p.lam, abs(orb.m), float(alpha), MOMENTUM_TOL)
    val = base + res.value / (1.0 - alpha)
    meta = _meta(spec, orb, **res.info)
    return EntropyValue(val, res.abs_error_estimate / abs(1.0 - alpha), Method.QUADRATURE, meta)


# ------------------------------------------------------------ derived measures


def shannon(spec: RingSpec, orb: Orbital, space: str) -> EntropyValue:
    """Shannon entropy -int rho ln rho in ``space`` ("position" or "momentum")."""
    p = derive(spec, orb)
    if space == "position":
        v, e, how = _position_shannon_dimless(orb.n, p.lam)
        return EntropyValue(2.0 * p.ln_r_eff + LN_2PI + v, e, how, _meta(spec, orb))
    if space == "momentum":
        _require_threshold(spec, orb, 1.0)
        if _is_gaussian_dot(spec, orb):
            m = abs(orb.m)
            # alpha -> 1 of the dot closed form
            v = -2.0 * p.ln_r_eff + math.log(math.pi / 2) + math.lgamma(m + 1) + m - m * float(digamma(m + 1)) + 1.0
            return EntropyValue(v, 1e-14 * (1 + abs(v)), Method.CLOSED_FORM, _meta(spec, orb))
        v, e = _momentum_shannon_dimless(orb.n, p.lam, abs(orb.m))
        return EntropyValue(-2.0 * p.ln_r_eff + LN_2PI + v, e, Method.QUADRATURE, _meta(spec, orb))
    raise DomainError(f"space must be 'position' or 'momentum', got {space!r}")


def renyi(spec: RingSpec, orb: Orbital, alpha: float, space: str) -> EntropyValue:
    if space == "position":
        return renyi_position(spec, orb, alpha)
    if space == "momentum":
        return renyi_momentum(spec, orb, alpha)
    raise DomainError(f"space must be 'position' or 'momentum', got {space!r}")


def _tsallis_from_renyi(r: EntropyValue, alpha: float) -> EntropyValue:
    if alpha == 1.0:
        return EntropyValue(r.value, r.abs_error_estimate, r.method, {**r.metadata, "note": TSALLIS_NOTE})
    x = (1.0 - alpha) * r.value
    val = -math.expm1(x) / (alpha - 1.0)
    err = math.exp(x) * r.abs_error_estimate
    return EntropyValue(val, err, r.method, {**r.metadata, "note": TSALLIS_NOTE})


def tsallis_position(spec: RingSpec, orb: Orbital, alpha: float) -> EntropyValue:
    return _tsallis_from_renyi(renyi_position(spec, orb, alpha), alpha)


def tsallis_momentum(spec: RingSpec, orb: Orbital, alpha: float) -> EntropyValue:
    return _tsallis_from_renyi(renyi_momentum(spec, orb, alpha), alpha)


def tsallis(spec, orb, alpha, space):
    return _tsallis_from_renyi(renyi(spec, orb, alpha, space), alpha)


def onicescu(spec: RingSpec, orb: Orbital, space: str) -> EntropyValue:
    """Onicescu energy O = int rho^2 = exp(-R(2))."""
    r = renyi(spec, orb, 2.0, space)
    v = math.exp(-r.value)
    return EntropyValue(v, v * r.abs_error_estimate, r.method, r.metadata)


def renyi_infinity(spec: RingSpec, orb: Orbital, space: str) -> EntropyValue:
    """R(infinity) = -ln of the global density maximum."""
    p = derive(spec, orb)
    if space == "position":
        if orb.n == 0:
            lam = p.lam
            shape = (lam - lam * math.log(lam) if lam > 0 else 0.0) + math.lgamma(lam + 1)
            v = 2.0 * p.ln_r_eff + LN_2PI + shape
            return EntropyValue(v, 1e-14 * (1 + abs(v)), Method.CLOSED_FORM, _meta(spec, orb))
        _, rho_max = position_density_peak(radial_state(spec, orb))
        return EntropyValue(-math.log(rho_max), 1e-12, Method.QUADRATURE, _meta(spec, orb))
    if space == "momentum":
        if orb.m != 0:
            raise UnsupportedOrbitalError("momentum R(infinity) closed form covers m = 0 orbitals only")
        g0 = momentum_density_zero(radial_state(spec, orb))
        return EntropyValue(-math.log(g0), 1e-14, Method.CLOSED_FORM, _meta(spec, orb))
    raise DomainError(f"space must be 'position' or 'momentum', got {space!r}")


def complexity(spec: RingSpec, orb: Orbital, alpha: float, space: str) -> float:
    """Shape Renyi complexity C = exp(R(alpha)) O (dimensionless)."""
    r = renyi(spec, orb, alpha, space)
    r2 = renyi(spec, orb, 2.0, space)
    return math.exp(r.value - r2.value)


# ------------------------------------------------------------ limit series

ASYMPTOTIC_KINDS = (
    "renyi4_0",
    "renyi4_1",
    "renyi4_2",
    "tsallis4_0",
    "tsallis4_1",
    "tsallis4_2",
    "hoflimits_half",
    "hoflimits_one",
    "hoflimits_infinity",
    "renyiab1",
    "renyiab2_0",
    "renyiab2_1",
    "renyiab2_2",
)


def _shannon_closed(lam, ln_r):
    return 2 * ln_r + LN_2PI + math.lgamma(lam + 1) + lam - lam * float(digamma(lam + 1)) + 1.0


def asymptotic_reference(kind: str, spec: RingSpec, orb: Orbital, alpha: float) -> float:
    """Truncated published expansions, for use as test oracles.

    Position ``renyi4_*``/``tsallis4_*`` kinds describe the n = 0 band;
    ``hoflimits_*`` give R_rho(alpha) + R_gamma(beta) of the a = nu = 0
    dot; ``renyiab*`` kinds expand R_rho of the n = m = 0 ring in the
    flux nu taken from ``spec``.
    """
    p = derive(spec, orb)
    lam, ln_r, a = p.lam, p.ln_r_eff, alpha
    g = EULER_GAMMA
    m = abs(orb.m)
    sa = math.sqrt(spec.a)
    nu = spec.nu
    if kind == "renyi4_0":
        return 2 * ln_r + LN_2PI - math.log(a) - (lam * (g + math.log(a)) + math.log(a) + math.lgamma(lam + 1)) * a
    if kind == "renyi4_1":
        slope = 0.5 * (lam - lam * lam * float(polygamma(1, lam + 1)) - 1.0)
        return _shannon_closed(lam, ln_r) + slope * (a - 1.0)
    if kind == "renyi4_2":
        if lam == 0:
            raise DomainError("renyi4_2 requires lambda > 0")
        lead = lam * (1 - math.log(lam)) + math.lgamma(lam + 1)
        return 2 * ln_r + LN_2PI + lead + (lead + 0.5 * math.log(a / (2 * math.pi * lam))) / a
    if kind == "tsallis4_0":
        return 2 * math.pi * math.exp(2 * ln_r) / a - 1.0
    if kind == "tsallis4_1":
        return _shannon_closed(lam, ln_r)
    if kind == "tsallis4_2":
        return 1.0 / a
    if kind in ("hoflimits_half", "hoflimits_infinity"):
        mm = m * math.log(m) if m else 0.0
        lead = 2 * LN_2PI + m * (1 + math.log(2)) + 2 * math.lgamma(0.5 * m + 1) - mm
        if kind == "hoflimits_half":
            h = a - 0.5
            return lead - 2 * h * math.log(h)
        return lead + 0.5 * math.log(a) / a
    if kind == "hoflimits_one":
        lead = 2 * (1 + math.log(math.pi) + math.lgamma(m + 1) + m * (1 - float(digamma(m + 1))))
        bracket = 1 / 3 + m**3 * float(polygamma(2, m + 1)) / 3 + m * m * float(polygamma(1, m + 1)) - 2 * m / 3
        return lead - bracket * (a - 1) ** 2
    if kind.startswith("renyiab"):
        if not sa > 0:
            raise DomainError("AB expansions require a > 0")
        base = 2 * ln_r + LN_2PI
        if kind == "renyiab1":
            head = ((sa * a + 1) * math.log(a) + a * math.lgamma(sa + 1) - math.lgamma(sa * a + 1)) / (a - 1)
            coef = a / (2 * sa * (a - 1)) * (float(digamma(sa + 1)) - float(digamma(sa * a + 1)) + math.log(a))
            return base + head + coef * nu * nu
        if kind == "renyiab2_0":
            head = -math.log(a) - (sa * (g + math.log(a)) + math.log(a * math.gamma(sa + 1))) * a
            return base + head - (g + float(digamma(sa + 1)) + math.log(a)) * a * nu * nu / (2 * sa)
        if kind == "renyiab2_1":
            p1 = float(polygamma(1, sa))
            return (
                base
                + math.lgamma(sa + 1)
                + sa * (1 - float(digamma(sa)))
                + 0.5 * sa * (1 - sa * p1) * (a - 1)
                + 0.5 * (1 / sa - float(polygamma(1, sa + 1))) * nu * nu
                + (0.5 + 3 / sa + spec.a * float(polygamma(2, sa)) - sa * p1) * (a - 1) / sa * nu * nu
            )
        if kind == "renyiab2_2":
            lead = sa * (1 - math.log(sa)) + math.lgamma(sa + 1)
            return (
                base
                + lead
                + (lead + 0.5 * math.log(a / (2 * math.pi * sa))) / a
                + (float(digamma(sa + 1)) - math.log(sa)) / (2 * sa) * nu * nu
                + (0.5 / sa + float(digamma(sa)) - math.log(sa)) * nu * nu / a
            )
    raise UnknownKindError(f"unknown expansion kind {kind!r}; valid kinds: {', '.join(ASYMPTOTIC_KINDS)}")


def renyi_slope_at_one(lam: float) -> float:
    """d R_rho / d alpha at alpha = 1 for the n = 0 band."""
    return 0.5 * (lam - lam * lam * float(polygamma(1, lam + 1)) - 1.0)
