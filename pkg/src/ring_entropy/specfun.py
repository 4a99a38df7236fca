"""Special-function kernel.

Real-argument log-gamma, digamma and the first two polygammas,
generalized Laguerre polynomials, integer-order Bessel J and the Kummer
function 1F1(a; b; -x) on the negative real axis.  Everything here is
pure; array arguments are accepted where noted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import special as _sp

from .errors import DomainError, PrecisionLossError, UnsupportedOrderError

EULER_GAMMA = 0.5772156649015329

# x at which 1F1(a; b; -x) switches from the convergent series to the
# large-argument expansion.  The expansion is only accepted when its own
# error estimate is below KUMMER_ASYMPTOTIC_ACCEPT, otherwise the
# convergent series keeps going (it stays well conditioned for b > 0).
# Re-tuning: tests/test_specfun.py::test_kummer_seam_retune.
KUMMER_SEAM = 30.0
KUMMER_ASYMPTOTIC_ACCEPT = 1e-14
KUMMER_PRECISION_LIMIT = 1e-8
# e^{-x} underflows past ~745; the series carries it in its first term.
_SERIES_XMAX = 700.0
_EPS = np.finfo(float).eps

# B_2, B_4, ..., B_20
_BERNOULLI = (
    1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66,
    -691.0 / 2730, 7.0 / 6, -3617.0 / 510, 43867.0 / 798, -174611.0 / 330,
)


@dataclass(frozen=True)
class EvalResult:
    """A computed value together with an absolute error estimate."""

    value: float
    abs_error_estimate: float
    info: dict = field(default_factory=dict, compare=False)

    def __float__(self):
        return float(self.value)


def ln_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"ln_gamma requires x > 0, got {x!r}")
    return math.lgamma(x)


def _check_positive(x, name):
    arr = np.asarray(x, dtype=float)
    if np.any(~(arr > 0)):
        raise DomainError(f"{name} requires x > 0")
    return arr


def digamma(x):
    """psi(x) = d ln Gamma / dx for x > 0 (scalar or array)."""
    x = _check_positive(x, "digamma")
    x = np.array(x, dtype=float, copy=True)
    acc = np.zeros_like(x)
    # shift up to x >= 10 where the asymptotic series is good to 1 ulp
    while np.any(x < 10.0):
        small = x < 10.0
        acc[small] -= 1.0 / x[small]
        x[small] += 1.0
    inv2 = 1.0 / (x * x)
    series = np.zeros_like(x)
    p = np.ones_like(x)
    for k, b2k in enumerate(_BERNOULLI[:8], start=1):
        p = p * inv2
        series += b2k / (2 * k) * p
    out = acc + np.log(x) - 0.5 / x - series
    return out[()] if out.ndim == 0 else out


def polygamma(k: int, x):
    """psi^(k)(x) for k in {1, 2} and x > 0."""
    if k not in (1, 2):
        raise UnsupportedOrderError(f"polygamma order {k} not supported (1 or 2 only)")
    x = _check_positive(x, "polygamma")
    x = np.array(x, dtype=float, copy=True)
    acc = np.zeros_like(x)
    while np.any(x < 10.0):
        small = x < 10.0
        if k == 1:
            acc[small] += 1.0 / x[small] ** 2
        else:
            acc[small] -= 2.0 / x[small] ** 3
        x[small] += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    if k == 1:
        out = inv + 0.5 * inv2
        p = inv.copy()
        for b2k in _BERNOULLI[:8]:
            p = p * inv2
            out = out + b2k * p
    else:
        out = -inv2 - inv2 * inv
        p = inv2.copy()
        for j, b2k in enumerate(_BERNOULLI[:8], start=1):
            p = p * inv2
            out = out - (2 * j + 1) * b2k * p
    out = acc + out
    return out[()] if out.ndim == 0 else out


def laguerre_gen(n: int, lam: float, x):
    """Generalized Laguerre polynomial L_n^lam(x) by upward recurrence in n."""
    if n < 0:
        raise DomainError("laguerre_gen requires n >= 0")
    if not lam > -1:
        raise DomainError("laguerre_gen requires lam > -1")
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev[()] if prev.ndim == 0 else prev
    cur = 1.0 + lam - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + lam - x) * cur - (k + lam) * prev) / (k + 1)
    return cur[()] if np.ndim(cur) == 0 else cur


def laguerre_coeffs(n: int, lam: float) -> np.ndarray:
    """Monomial coefficients c_j with L_n^lam(z) = sum_j c_j z^j."""
    if n < 0 or not lam > -1:
        raise DomainError("laguerre_coeffs requires n >= 0 and lam > -1")
    top = math.lgamma(n + lam + 1)
    out = np.empty(n + 1)
    for j in range(n + 1):
        mag = top - math.lgamma(j + lam + 1) - math.lgamma(n - j + 1) - math.lgamma(j + 1)
        out[j] = (-1) ** j * math.exp(mag)
    return out


def bessel_j(m: int, x):
    """Integer-order Bessel function of the first kind J_m(x), x >= 0."""
    if m < 0:
        raise DomainError("bessel_j requires m >= 0")
    return _sp.jv(m, x)


def _rgamma(x: float) -> float:
    """1 / Gamma(x), zero at the poles."""
    if x <= 0 and x == math.floor(x):
        return 0.0
    return 1.0 / math.gamma(x)


def _kummer_series(a, b, x):
    """e^{-x} 1F1(b - a; b; x) term by term, Neumaier-compensated.

    Returns value, absolute error estimate and the condition number
    sum|t_k| / |sum t_k| of the summation.
    """
    c = b - a
    t = np.exp(-x)
    s = t.copy()
    comp = np.zeros_like(x)
    abs_sum = np.abs(t)
    # terms keep changing sign while c + k < 0; after that they shrink
    # monotonically once k exceeds x
    k_free = max(0.0, -c)
    k = 0
    max_terms = int(2 * np.max(x, initial=0.0) + 10 * math.sqrt(np.max(x, initial=0.0) + 1) + k_free + 60)
    while True:
        t = t * ((c + k) / (b + k)) * x / (k + 1)
        k += 1
        big = np.abs(s) >= np.abs(t)
        tmp = s + t
        comp += np.where(big, (s - tmp) + t, (t - tmp) + s)
        s = tmp
        abs_sum += np.abs(t)
        if k > k_free and k > 1:
            total = np.abs(s + comp)
            done = (np.abs(t) <= 0.25 * _EPS * total) & (k > x)
            done |= t == 0.0
            if np.all(done):
                break
        if k > max_terms:
            raise PrecisionLossError("1F1 series did not terminate")
    value = s + comp
    # each term is built from k rounded products
    err = _EPS * (2.0 * k + 4.0) * abs_sum + np.abs(t)
    with np.errstate(divide="ignore", invalid="ignore"):
        cond = np.where(value != 0, abs_sum / np.abs(value), np.where(abs_sum > 0, np.inf, 1.0))
    return value, err, cond


def _kummer_asymptotic(a, b, x):
    """Large-x expansion of 1F1(a; b; -x), both exponential scales.

    The algebraic part is optimally truncated; the exponentially small
    part enters with the real-axis multiplier cos(pi (b - a)) and its
    magnitude is counted in the error estimate as well.
    """
    gb = math.gamma(b)
    dom_pref = gb * _rgamma(b - a)
    rec_pref = gb * _rgamma(a) * math.cos(math.pi * (b - a))
    inv = 1.0 / x

    def _series(p, q, pref, scale, inv):
        # a nonpositive-integer parameter makes the series a finite sum;
        # it must then be summed to the end, not optimally truncated
        finite = [int(-v) for v in (p, q) if v <= 0 and v == math.floor(v)]
        n_terms = min(finite) if finite else None
        term = np.ones_like(x)
        total = term.copy()
        active = np.ones(x.shape, dtype=bool)
        last = np.abs(term)
        for k in range(80 if n_terms is None else n_terms):
            nxt = term * ((p + k) * (q + k) / (k + 1)) * inv
            grow = np.abs(nxt) > last
            if n_terms is None:
                active &= ~grow
            elif k == n_terms - 1:
                last = np.where(active, 0.0, last)
            total = np.where(active, total + nxt, total)
            last = np.where(active, np.abs(nxt), last)
            term = nxt
            if n_terms is None and not np.any(active & (np.abs(nxt) > 1e-18 * np.abs(total))):
                break
        if n_terms == 0:
            last = np.zeros_like(x)
        return pref * scale * total, np.abs(pref * scale) * (last + 8 * _EPS * np.abs(total))

    with np.errstate(over="ignore", under="ignore"):
        dom_scale = np.exp(-a * np.log(x))
        rec_scale = np.exp(-x + (a - b) * np.log(x))
    if dom_pref != 0.0:
        dom, dom_err = _series(a, a - b + 1.0, dom_pref, dom_scale, inv)
    else:
        dom, dom_err = np.zeros_like(x), np.zeros_like(x)
    if rec_pref != 0.0:
        rec, rec_err = _series(b - a, 1.0 - a, rec_pref, rec_scale, -inv)
    else:
        rec, rec_err = np.zeros_like(x), np.zeros_like(x)
    exact_poly = dom_pref == 0.0
    # x**-a is formed as exp(-a ln x): its rounding grows with |a ln x|
    val = dom + rec
    err = dom_err + rec_err + (0.0 if exact_poly else np.abs(rec))
    err = err + _EPS * (4.0 + np.abs(a * np.log(x))) * np.abs(val)
    return val, err


def kummer_1f1_neg_array(a: float, b: float, x, method: str = "auto", check: bool = True):
    """Vectorized 1F1(a; b; -x) for x >= 0.

    Returns ``(values, abs_errors)`` as arrays.  ``method`` is ``"auto"``,
    ``"series"`` or ``"asymptotic"``; the latter two force one branch and
    exist for seam checks.  With ``check=False`` no relative-precision
    test is made; callers that sum several of these (and may sit on a
    zero of the function) judge the absolute errors themselves.
    """
    if not b > 0:
        raise DomainError("kummer_1f1_neg requires b > 0")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("kummer_1f1_neg requires x >= 0")
    shape = x.shape
    x = x.ravel()
    val = np.empty_like(x)
    err = np.empty_like(x)
    cond = np.ones_like(x)

    if method == "series":
        use_series = np.ones(x.shape, dtype=bool)
    elif method == "asymptotic":
        use_series = np.zeros(x.shape, dtype=bool)
    elif method == "auto":
        use_series = x <= KUMMER_SEAM
    else:
        raise ValueError(f"unknown method {method!r}")

    asym = ~use_series
    if np.any(asym):
        xa = x[asym]
        v, e = _kummer_asymptotic(a, b, xa)
        if method == "auto":
            with np.errstate(divide="ignore", invalid="ignore"):
                rel = e / np.abs(v)
            reject = ~(rel <= KUMMER_ASYMPTOTIC_ACCEPT) & (xa <= _SERIES_XMAX)
            idx = np.flatnonzero(asym)
            use_series[idx[reject]] = True
            keep = ~reject
            val[idx[keep]] = v[keep]
            err[idx[keep]] = e[keep]
        else:
            val[asym] = v
            err[asym] = e
    if np.any(use_series):
        v, e, c = _kummer_series(a, b, x[use_series])
        val[use_series] = v
        err[use_series] = e
        cond[use_series] = c

    with np.errstate(divide="ignore", invalid="ignore"):
        rel = np.where(val != 0, err / np.abs(val), np.where(err > 0, np.inf, 0.0))
    bad = (rel > KUMMER_PRECISION_LIMIT) & check
    # a genuinely vanishing result (1/Gamma(b-a) = 0 and e^{-x} underflow) is exact
    bad &= ~((val == 0) & (err == 0))
    if np.any(bad):
        worst = float(np.max(rel[bad]))
        raise PrecisionLossError(
            f"1F1({a}, {b}, -x) lost precision: relative error estimate {worst:.2e}",
            condition=float(np.max(cond[bad])),
        )
    return val.reshape(shape), err.reshape(shape)


def kummer_1f1_neg(a: float, b: float, x: float, method: str = "auto") -> EvalResult:
    """Kummer's confluent hypergeometric function 1F1(a; b; -x), x >= 0."""
    v, e = kummer_1f1_neg_array(a, b, np.array([x], dtype=float), method=method)
    return EvalResult(float(v[0]), float(e[0]))
