"""Ring configuration, derived parameters, spectrum and persistent currents.

Natural units hbar = m* = e = 1.  Energies are in units of hbar*omega0,
currents in e*omega0/(2 pi).  The uniform field enters only through the
ratio omega_c/omega0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DegenerateParameterError, DomainError


@dataclass(frozen=True)
class RingSpec:
    """Physical configuration of the ring.

    Parameters
    ----------
    a : float
        Dimensionless antidot strength (a = 0 is the quantum dot).
    omega0 : float
        Confinement frequency; ``omega0 = 0.5`` gives r0 = 1.
    field_ratio : float
        Cyclotron to confinement frequency ratio omega_c / omega0.
    nu : float
        Aharonov-Bohm flux in units of the flux quantum.
    """

    a: float = 0.0
    omega0: float = 0.5
    field_ratio: float = 0.0
    nu: float = 0.0

    def __post_init__(self):
        for name in ("a", "omega0", "field_ratio", "nu"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        if self.a < 0:
            raise DomainError(f"antidot strength must be >= 0, got {self.a}")
        if self.omega0 <= 0:
            raise DomainError(f"omega0 must be > 0, got {self.omega0}")
        if self.field_ratio < 0:
            raise DomainError(f"field_ratio must be >= 0, got {self.field_ratio}")

    def replace(self, **changes) -> "RingSpec":
        from dataclasses import replace

        return replace(self, **changes)


@dataclass(frozen=True)
class Orbital:
    n: int = 0
    m: int = 0

    def __post_init__(self):
        if int(self.n) != self.n or int(self.m) != self.m:
            raise DomainError("quantum numbers must be integers")
        if self.n < 0:
            raise DomainError(f"principal index must be >= 0, got {self.n}")
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "m", int(self.m))


@dataclass(frozen=True)
class DerivedParams:
    omega_c: float
    omega_eff: float
    r_eff: float
    lam: float
    m_phi: float

    @property
    def ln_r_eff(self) -> float:
        return -0.5 * math.log(2.0 * self.omega_eff)


def derive(spec: RingSpec, orb: Orbital) -> DerivedParams:
    """Cyclotron and effective frequencies, r_eff, lambda and m_phi."""
    omega_c = spec.field_ratio * spec.omega0
    omega_eff = math.sqrt(spec.omega0**2 + 0.25 * omega_c**2)
    r_eff = (2.0 * omega_eff) ** -0.5
    m_phi = orb.m + spec.nu
    lam = math.sqrt(m_phi * m_phi + spec.a)
    return DerivedParams(omega_c, omega_eff, r_eff, lam, m_phi)


def _field_factor(spec: RingSpec) -> float:
    return math.sqrt(1.0 + 0.25 * spec.field_ratio**2)


def energy(spec: RingSpec, orb: Orbital) -> float:
    """Orbital energy in units of hbar*omega0."""
    p = derive(spec, orb)
    return (
        _field_factor(spec) * (2 * orb.n + p.lam + 1)
        + 0.5 * p.m_phi * spec.field_ratio
        - math.sqrt(spec.a)
    )


def persistent_current(spec: RingSpec, orb: Orbital) -> float:
    """J = -dE/dnu in units of e*omega0/(2 pi).

    Raises
    ------
    DegenerateParameterError
        At lambda = 0 (a = 0 and m + nu = 0), where m_phi/lambda is 0/0.
    """
    p = derive(spec, orb)
    if p.lam == 0.0:
        raise DegenerateParameterError("persistent current undefined at lambda = 0 (a = 0, m + nu = 0)")
    return -((p.m_phi / p.lam) * _field_factor(spec) + 0.5 * spec.field_ratio)


def alpha_threshold(spec: RingSpec, orb: Orbital) -> float:
    """Smallest Renyi/Tsallis parameter with convergent momentum measures.

    Zero for the flux-free dot, 1/(2 + lambda) otherwise; the uniform
    field does not enter.
    """
    if spec.a == 0.0 and spec.nu == 0.0:
        return 0.0
    return 1.0 / (2.0 + derive(spec, orb).lam)


def ground_crossing_field(a: float) -> float:
    """Field ratio omega_c/omega0 at which the m = -1 level drops below m = 0."""
    if not a > 0:
        raise DomainError("crossing field requires a > 0; the dot ground state is never crossed")
    sa, sa1 = math.sqrt(a), math.sqrt(a + 1.0)
    # sqrt(a(a+1)) - a = 1 / (sqrt(1 + 1/a) + 1) avoids cancellation at large a
    den = 1.0 / (math.sqrt(1.0 + 1.0 / a) + 1.0)
    return math.sqrt(2.0) * (1.0 / (sa1 + sa)) / math.sqrt(den)


def rotator_limit(r_min: float, theta: float, m: int) -> tuple[float, float]:
    """Energy and current of the 1D rotator of radius ``r_min`` with flux ``theta``."""
    if not r_min > 0:
        raise DomainError("rotator radius must be positive")
    q = m + theta
    return q * q / (2.0 * r_min**2), -q / r_min**2
