"""Parameter sweeps and flux diagnostics.

Sweeps are evaluated cell by cell on a thread pool; the output order is
fixed by the grid, not by completion order.  A momentum cell below the
convergence threshold is stored as NaN and flagged in the metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np

from . import __version__
from .errors import BelowThresholdError, DegenerateParameterError, DomainError
from .measures import UNITS, renyi_momentum, renyi_position, tsallis_momentum, tsallis_position
from .model import Orbital, RingSpec, energy, persistent_current
from .parallel import ordered_map
from .specfun import digamma, polygamma

DERIV_STEP = 1e-4
DEFAULT_NU_GRID = np.linspace(-0.5, 0.5, 21)
VARIABLES = ("nu", "alpha", "field_ratio")
MAX_STEPS = 100_000

# column family -> quantity it carries
COLUMN_TAGS = {
    "R_rho": "position Renyi entropy",
    "R_gamma": "momentum Renyi entropy",
    "T_rho": "position Tsallis entropy",
    "T_gamma": "momentum Tsallis entropy",
    "E": "orbital energy [hbar omega0]",
    "J": "persistent current [e omega0 / 2 pi]",
}


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    steps: int = 21
    orbitals: tuple = (Orbital(0, 0),)
    alpha: float = 1.0
    base: RingSpec = field(default_factory=RingSpec)

    def __post_init__(self):
        if self.variable not in VARIABLES:
            raise DomainError(f"sweep variable must be one of {VARIABLES}, got {self.variable!r}")
        if not self.start < self.stop:
            raise DomainError("sweep requires start < stop")
        if not 2 <= self.steps <= MAX_STEPS:
            raise DomainError(f"steps must be in [2, {MAX_STEPS}]")
        if not self.orbitals:
            raise DomainError("sweep needs at least one orbital")
        object.__setattr__(self, "orbitals", tuple(self.orbitals))

    def grid(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.steps)


@dataclass
class SweepTable:
    """Columnar sweep output; ``metadata['flags']`` lists NaN cells and why."""

    column_names: list
    rows: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float).reshape(-1, len(self.column_names))

    def column(self, name: str) -> np.ndarray:
        return self.rows[:, self.column_names.index(name)]

    def as_dicts(self):
        return [dict(zip(self.column_names, map(float, r))) for r in self.rows]


def _tag(orb: Orbital) -> str:
    return f"[{orb.n},{orb.m}]"


def _cell_values(spec: RingSpec, orb: Orbital, alpha: float, with_tsallis: bool):
    vals, flags = {}, {}
    t = _tag(orb)
    vals["R_rho" + t] = renyi_position(spec, orb, alpha).value
    try:
        vals["R_gamma" + t] = renyi_momentum(spec, orb, alpha).value
    except BelowThresholdError as exc:
        vals["R_gamma" + t] = math.nan
        flags["R_gamma" + t] = f"below threshold {exc.threshold:.10g}"
    if with_tsallis:
        vals["T_rho" + t] = tsallis_position(spec, orb, alpha).value
        try:
            vals["T_gamma" + t] = tsallis_momentum(spec, orb, alpha).value
        except BelowThresholdError as exc:
            vals["T_gamma" + t] = math.nan
            flags["T_gamma" + t] = f"below threshold {exc.threshold:.10g}"
    vals["E" + t] = energy(spec, orb)
    try:
        vals["J" + t] = persistent_current(spec, orb)
    except DegenerateParameterError:
        vals["J" + t] = math.nan
        flags["J" + t] = "lambda = 0"
    return vals, flags


def run_sweep(sweep: SweepSpec) -> SweepTable:
    """Evaluate entropies, energies and currents over the sweep grid."""
    with_tsallis = sweep.variable == "alpha"
    fams = ["R_rho", "R_gamma"] + (["T_rho", "T_gamma"] if with_tsallis else []) + ["E", "J"]
    columns = [sweep.variable] + [f + _tag(o) for o in sweep.orbitals for f in fams]
    grid = sweep.grid()

    def row(x):
        if sweep.variable == "alpha":
            spec, alpha = sweep.base, float(x)
        else:
            spec, alpha = replace(sweep.base, **{sweep.variable: float(x)}), sweep.alpha
        vals, flags = {sweep.variable: float(x)}, {}
        for orb in sweep.orbitals:
            v, f = _cell_values(spec, orb, alpha, with_tsallis)
            vals.update(v)
            flags.update(f)
        return [vals[c] for c in columns], flags

    results = ordered_map(row, grid)
    flags = [
        {"row": i, "column": c, "reason": why}
        for i, (_, fl) in enumerate(results)
        for c, why in fl.items()
    ]
    meta = {
        "sweep": {
            "variable": sweep.variable,
            "start": sweep.start,
            "stop": sweep.stop,
            "steps": sweep.steps,
            "alpha": sweep.alpha,
            "orbitals": [[o.n, o.m] for o in sweep.orbitals],
        },
        "spec": {"a": sweep.base.a, "omega0": sweep.base.omega0, "field_ratio": sweep.base.field_ratio,
                 "nu": sweep.base.nu},
        "units": UNITS,
        "omega0": sweep.base.omega0,
        "version": __version__,
        "column_tags": {c: COLUMN_TAGS.get(c.split("[")[0], c) for c in columns},
        "flags": flags,
    }
    return SweepTable(columns, np.array([r for r, _ in results], dtype=float), meta)


def ab_sweep(sweep: SweepSpec) -> SweepTable:
    """Flux sweep: R_rho, R_gamma (NaN below threshold), E and J per orbital."""
    if sweep.variable != "nu":
        raise DomainError("ab_sweep requires variable = 'nu'")
    return run_sweep(sweep)


def delta_nu(spec: RingSpec, orb: Orbital, alpha: float, nu: float) -> float:
    """R_rho(nu; alpha) - R_rho(0; alpha)."""
    return (
        renyi_position(replace(spec, nu=nu), orb, alpha).value
        - renyi_position(replace(spec, nu=0.0), orb, alpha).value
    )


def degeneracy_residual(spec: RingSpec, n: int, m: int, alpha: float) -> tuple[float, float]:
    """Residuals of the half-flux degeneracies of the position entropy.

    R(n, m; -1/2) - R(n, -m+1; -1/2) and R(n, m; +1/2) - R(n, -m-1; +1/2).
    """
    lo, hi = replace(spec, nu=-0.5), replace(spec, nu=0.5)
    res_minus = renyi_position(lo, Orbital(n, m), alpha).value - renyi_position(lo, Orbital(n, -m + 1), alpha).value
    res_plus = renyi_position(hi, Orbital(n, m), alpha).value - renyi_position(hi, Orbital(n, -m - 1), alpha).value
    return res_minus, res_plus


def ab_curvature(spec: RingSpec, alpha: float) -> float:
    """Coefficient of nu^2 in R_rho of the n = m = 0 ring at small flux."""
    if not spec.a > 0:
        raise DomainError("flux curvature requires a > 0")
    if not alpha > 0:
        raise DomainError("alpha must be positive")
    sa = math.sqrt(spec.a)
    if alpha == 1.0:
        return 0.5 * (1.0 / sa - float(polygamma(1, sa + 1.0)))
    bracket = float(digamma(sa + 1.0)) - float(digamma(sa * alpha + 1.0)) + math.log(alpha)
    return alpha / (2.0 * sa * (alpha - 1.0)) * bracket


def _sign(x, tol=1e-12):
    return 0 if abs(x) <= tol else (1 if x > 0 else -1)


def entropy_slope_vs_current(spec: RingSpec, orb: Orbital, alpha: float, nu: float):
    """(dR_rho/dnu, J, sign_consistent) at flux ``nu``.

    The slope is a central difference with step ``DERIV_STEP``.  The
    sign convention, calibrated on the m = 0 branch, is
    sign(dR/dnu) = -sign(J).
    """
    h = DERIV_STEP
    r_plus = renyi_position(replace(spec, nu=nu + h), orb, alpha).value
    r_minus = renyi_position(replace(spec, nu=nu - h), orb, alpha).value
    slope = (r_plus - r_minus) / (2.0 * h)
    current = persistent_current(replace(spec, nu=nu), orb)
    return slope, current, _sign(slope, 1e-9) == -_sign(current, 1e-12)
