"""Renyi and Tsallis uncertainty relations for the planar ring.

The relations pair a position parameter alpha with its conjugate
beta = alpha / (2 alpha - 1), i.e. 1/alpha + 1/beta = 2.  The spatial
dimension is fixed at two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize_scalar

from .errors import DomainError, RingEntropyError
from .measures import renyi_infinity, renyi_momentum, renyi_position
from .model import Orbital, RingSpec, derive
from .parallel import ordered_map
from .specfun import digamma
from .waves import momentum_waveform, radial_state

DIMENSION = 2
SATURATION_TOL = 1e-6
_LN_PI = math.log(math.pi)


@dataclass(frozen=True)
class RelationReport:
    """One side-by-side evaluation of an uncertainty relation.

    ``slack`` is lhs - rhs.  For ``kind == "renyi"`` the sides are
    R_rho(alpha) + R_gamma(beta) and the bound f(alpha); for
    ``kind == "tsallis"`` they are t_rho(alpha) and t_gamma(beta).
    ``holds`` is None where no inequality is claimed.
    """

    orbital: Orbital
    alpha: float
    lhs: float
    rhs: float
    slack: float
    saturated: bool
    kind: str = "renyi"
    holds: bool | None = None
    error: str | None = field(default=None, compare=False)


def conjugate(alpha: float) -> float:
    """beta with 1/alpha + 1/beta = 2."""
    if not alpha > 0.5:
        raise DomainError(f"conjugate parameter requires alpha > 1/2, got {alpha!r}")
    if math.isinf(alpha):
        return 0.5
    return alpha / (2.0 * alpha - 1.0)


def renyi_bound(alpha: float) -> float:
    """f(alpha) = 2[ln pi - ln alpha + (alpha - 1/2)/(alpha - 1) ln(2 alpha - 1)]."""
    if not alpha > 0.5:
        raise DomainError(f"Renyi bound requires alpha > 1/2, got {alpha!r}")
    if math.isinf(alpha):
        return 2.0 * math.log(2.0 * math.pi)
    d = alpha - 1.0
    ratio = 2.0 if d == 0.0 else math.log1p(2.0 * d) / d
    return 2.0 * (_LN_PI - math.log(alpha) + (alpha - 0.5) * ratio)


def _log_gamma_max(spec: RingSpec, orb: Orbital) -> float:
    """ln of the global maximum of the momentum density."""
    if orb.m == 0 or (spec.a == 0.0 and spec.nu == 0.0 and orb.n == 0):
        if orb.m == 0:
            return -renyi_infinity(spec, orb, "momentum").value
        m = abs(orb.m)
        p = derive(spec, orb)
        return 2 * p.ln_r_eff - math.log(math.pi / 2) - (math.lgamma(m + 1) + m - m * math.log(m))
    state = radial_state(spec, orb)
    grid = np.linspace(0.0, 12.0, 2401)
    kt, _ = momentum_waveform(state, grid)
    i = int(np.argmax(kt * kt))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = minimize_scalar(
        lambda x: -float(momentum_waveform(state, x)[0][0] ** 2),
        bounds=(lo, hi),
        method="bounded",
        options={"xatol": 1e-12},
    )
    peak = max(-res.fun, float(kt[i] ** 2))
    p = derive(spec, orb)
    return math.log(peak) + 2 * p.ln_r_eff - math.log(2 * math.pi)


def _t_side(alpha: float, renyi_value: float, ln_r_eff: float, sign: int) -> float:
    if alpha == 1.0:
        return 1.0 / math.sqrt(math.pi)
    log_t = sign * ((alpha - 1.0) / alpha) * ln_r_eff
    log_t += (math.log(alpha / math.pi) + (1.0 - alpha) * renyi_value) / (2.0 * alpha)
    return math.exp(log_t)


def tsallis_sides(spec: RingSpec, orb: Orbital, alpha: float) -> tuple[float, float]:
    """Dimensionless sides t_rho(alpha) and t_gamma(beta), beta = conjugate(alpha).

    At alpha = 1/2 the momentum side is the beta -> infinity limit
    exp(-R_gamma(inf)/2) / r_eff.
    """
    p = derive(spec, orb)
    ln_r = p.ln_r_eff
    t_rho = _t_side(alpha, renyi_position(spec, orb, alpha).value, ln_r, +1)
    if alpha == 0.5:
        t_gamma = math.exp(0.5 * _log_gamma_max(spec, orb) - ln_r)
        return t_rho, t_gamma
    beta = conjugate(alpha)
    t_gamma = _t_side(beta, renyi_momentum(spec, orb, beta).value, ln_r, -1)
    return t_rho, t_gamma


def renyi_sum(spec: RingSpec, orb: Orbital, alpha: float) -> RelationReport:
    """R_rho(alpha) + R_gamma(beta) against the bound f(alpha)."""
    beta = conjugate(alpha)
    lhs = renyi_position(spec, orb, alpha).value + renyi_momentum(spec, orb, beta).value
    rhs = renyi_bound(alpha)
    slack = lhs - rhs
    return RelationReport(orb, alpha, lhs, rhs, slack, abs(slack) <= SATURATION_TOL, "renyi", slack >= -1e-9)


def renyi_sum_half_limit(spec: RingSpec, orb: Orbital) -> float:
    """Limit of R_rho(alpha) + R_gamma(beta) as alpha -> 1/2+.

    beta runs to infinity, so the sum tends to R_rho(1/2) + R_gamma(inf)
    with R_gamma(inf) = -ln max gamma.  Both pieces are evaluated
    directly; extrapolating the sum in alpha is unreliable because its
    approach carries (alpha - 1/2) ln(alpha - 1/2) terms.
    """
    return renyi_position(spec, orb, 0.5).value - _log_gamma_max(spec, orb)


def tsallis_report(spec: RingSpec, orb: Orbital, alpha: float) -> RelationReport:
    t_rho, t_gamma = tsallis_sides(spec, orb, alpha)
    slack = t_rho - t_gamma
    gaussian = spec.a == 0.0 and spec.nu == 0.0 and orb.n == 0 and orb.m == 0
    claimed = 0.5 < alpha <= 1.0 or gaussian
    holds = (slack >= -1e-9) if claimed else None
    return RelationReport(orb, alpha, t_rho, t_gamma, slack, abs(slack) <= SATURATION_TOL, "tsallis", holds)


def verify_relations(spec: RingSpec, orbitals, alpha_grid, kinds=("renyi", "tsallis")) -> list[RelationReport]:
    """Evaluate both relations on the (orbital, alpha) grid.

    Failures at individual points (e.g. a conjugate parameter below the
    momentum threshold) are recorded in the report's ``error`` field and
    do not abort the batch.  Output order is orbital-major, then alpha,
    then kind.
    """
    cells = [(orb, a, k) for orb in orbitals for a in alpha_grid for k in kinds]

    def one(cell):
        orb, a, k = cell
        try:
            return renyi_sum(spec, orb, a) if k == "renyi" else tsallis_report(spec, orb, a)
        except RingEntropyError as exc:
            nan = float("nan")
            return RelationReport(orb, a, nan, nan, nan, False, k, None, f"{type(exc).__name__}: {exc}")

    return ordered_map(one, cells)


def relation_peaks(reports) -> dict:
    """Per orbital: alpha of the largest Renyi slack and of the largest sum."""
    out = {}
    for r in reports:
        if r.kind != "renyi" or r.error is not None:
            continue
        cur = out.setdefault(r.orbital, {"alpha_max_slack": r.alpha, "max_slack": r.slack,
                                         "alpha_max_sum": r.alpha, "max_sum": r.lhs})
        if r.slack > cur["max_slack"]:
            cur["alpha_max_slack"], cur["max_slack"] = r.alpha, r.slack
        if r.lhs > cur["max_sum"]:
            cur["alpha_max_sum"], cur["max_sum"] = r.alpha, r.lhs
    return out


def psi_relation(abs_m: int) -> float:
    """ln(|m|!) + |m|[1 - psi(|m| + 1)]; positive for |m| >= 1."""
    return math.lgamma(abs_m + 1) + abs_m * (1.0 - float(digamma(abs_m + 1)))
