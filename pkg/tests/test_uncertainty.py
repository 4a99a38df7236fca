import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ring_entropy import measures as M
from ring_entropy import uncertainty as U
from ring_entropy.errors import DomainError
from ring_entropy.model import Orbital, RingSpec

QD = RingSpec()
RING = RingSpec(a=20)
LN2PI = math.log(2 * math.pi)


def test_conjugate_examples():
    assert U.conjugate(1.0) == 1.0
    assert U.conjugate(2.0) == pytest.approx(2 / 3, rel=1e-15)
    assert U.conjugate(math.inf) == 0.5
    for bad in (0.5, 0.3, -1.0):
        with pytest.raises(DomainError):
            U.conjugate(bad)


@given(st.floats(0.5001, 1e6))
def test_conjugate_involution(alpha):
    beta = U.conjugate(alpha)
    assert 1 / alpha + 1 / beta == pytest.approx(2.0, rel=1e-12)
    assert U.conjugate(beta) == pytest.approx(alpha, rel=1e-8)


def test_bound_examples():
    assert U.renyi_bound(2.0) == pytest.approx(4.19900, abs=1e-5)
    assert U.renyi_bound(1.0) == pytest.approx(2 * (1 + math.log(math.pi)), abs=1e-14)
    assert U.renyi_bound(math.inf) == pytest.approx(2 * LN2PI, abs=1e-15)
    # both ends approach 2 ln 2 pi
    assert U.renyi_bound(0.5 + 1e-9) == pytest.approx(2 * LN2PI, abs=1e-6)
    assert U.renyi_bound(1e9) == pytest.approx(2 * LN2PI, abs=1e-6)
    with pytest.raises(DomainError):
        U.renyi_bound(0.5)


def test_bound_continuous_at_one():
    assert U.renyi_bound(1 + 1e-9) == pytest.approx(U.renyi_bound(1.0), abs=1e-8)
    assert U.renyi_bound(1 - 1e-9) == pytest.approx(U.renyi_bound(1.0), abs=1e-8)


def test_tsallis_sides_examples():
    t = U.tsallis_sides(RING, Orbital(1, 1), 1.0)
    assert t == pytest.approx((1 / math.sqrt(math.pi), 1 / math.sqrt(math.pi)), rel=1e-14)
    t_rho, t_gamma = U.tsallis_sides(QD, Orbital(0, 1), 0.5)
    assert t_rho == pytest.approx(1.0, abs=1e-12)
    assert t_gamma == pytest.approx(0.48394, abs=1e-5)


@pytest.mark.parametrize("alpha", [0.55, 0.8, 1.0, 2.0, 7.0])
@pytest.mark.parametrize("fr", [0.0, 3.0])
def test_gaussian_saturates_both(alpha, fr):
    spec = RingSpec(field_ratio=fr)
    r = U.renyi_sum(spec, Orbital(0, 0), alpha)
    assert abs(r.slack) <= 1e-10 and r.saturated
    t = U.tsallis_report(spec, Orbital(0, 0), alpha)
    assert abs(t.slack) <= 1e-10 and t.saturated and t.holds


ORBS = [Orbital(n, m) for n in range(3) for m in (-2, -1, 0, 1, 2)]
SPECS = [RingSpec(a=a, nu=nu) for a in (0.0, 1.0, 20.0) for nu in (0.0, 0.25)]


@pytest.mark.parametrize("spec", SPECS)
def test_renyi_relation_holds(spec):
    orbs = [Orbital(n, m) for n in (0, 1) for m in range(-3, 4)]
    reports = U.verify_relations(spec, orbs, [0.55, 0.75, 1.0, 2.0, 5.0], kinds=("renyi",))
    assert all(r.error is None for r in reports)
    assert min(r.slack for r in reports) >= -1e-9
    # only the Gaussian dot saturates
    sat = {r.orbital for r in reports if r.saturated}
    assert sat == ({Orbital(0, 0)} if spec == QD else set())


def test_tsallis_strict_for_dot_with_angular_momentum():
    for m in (1, -2, 3):
        for alpha in (0.6, 0.8, 0.95):
            assert U.tsallis_report(QD, Orbital(0, m), alpha).slack > 1e-6


@pytest.mark.parametrize("spec", [QD, RING])
def test_tsallis_direction(spec):
    # where the inequality is claimed it holds; elsewhere no verdict
    for r in U.verify_relations(spec, ORBS[::3], [0.6, 0.8, 1.0, 3.0], kinds=("tsallis",)):
        if r.alpha <= 1.0:
            assert r.holds is True
        elif r.orbital != Orbital(0, 0) or spec != QD:
            assert r.holds is None


def test_relations_field_independent():
    orbs = [Orbital(1, -1), Orbital(0, 2)]
    base = U.verify_relations(RING, orbs, [0.7, 3.0])
    other = U.verify_relations(RING.replace(field_ratio=4.0), orbs, [0.7, 3.0])
    for a, b in zip(base, other):
        assert (a.orbital, a.alpha, a.kind) == (b.orbital, b.alpha, b.kind)
        assert a.lhs == pytest.approx(b.lhs, abs=1e-9)
        assert a.rhs == pytest.approx(b.rhs, abs=1e-9)


def test_verify_relations_collects_errors():
    reports = U.verify_relations(QD, [Orbital(0, 1)], [0.4, 2.0])
    assert [(r.alpha, r.kind) for r in reports] == [(0.4, "renyi"), (0.4, "tsallis"), (2.0, "renyi"), (2.0, "tsallis")]
    bad = [r for r in reports if r.error]
    assert len(bad) == 2 and all(r.alpha == 0.4 and "DomainError" in r.error for r in bad)
    assert all(math.isnan(r.slack) for r in bad)


def test_dot_sum_peaks_at_one():
    grid = [0.6, 0.8, 0.9, 1.0, 1.1, 1.3, 2.0, 4.0]
    peaks = U.relation_peaks(U.verify_relations(QD, [Orbital(0, m) for m in range(3)], grid, kinds=("renyi",)))
    for m in range(3):
        assert peaks[Orbital(0, m)]["alpha_max_sum"] == 1.0


def test_dot_sum_at_one_closed_form():
    for m in range(4):
        lead = M.asymptotic_reference("hoflimits_one", QD, Orbital(0, m), 1.0)
        assert U.renyi_sum(QD, Orbital(0, m), 1.0).lhs == pytest.approx(lead, abs=1e-10)
        # excess over the bound equals twice the psi relation
        assert lead - U.renyi_bound(1.0) == pytest.approx(2 * U.psi_relation(m), abs=1e-12)


def test_psi_relation_positive():
    assert U.psi_relation(0) == 0.0
    assert all(U.psi_relation(m) > 0 for m in range(1, 7))


@pytest.mark.parametrize("m", [0, 1, 2, 3])
def test_half_limit(m):
    lead = M.asymptotic_reference("hoflimits_half", QD, Orbital(0, m), 0.5 + 1e-15)
    assert U.renyi_sum_half_limit(QD, Orbital(0, m)) == pytest.approx(lead, abs=1e-10)


def test_half_limit_is_approached():
    for orb in (Orbital(0, 1), Orbital(1, 2)):
        lim = U.renyi_sum_half_limit(RING, orb)
        gaps = [abs(U.renyi_sum(RING, orb, 0.5 + h).lhs - lim) for h in (1e-2, 1e-3, 1e-4)]
        assert gaps[0] > gaps[1] > gaps[2] and gaps[2] < 2e-3


def test_infinity_end_approaches_bound_limit():
    r = U.renyi_sum(QD, Orbital(0, 0), 1e6)
    assert r.lhs == pytest.approx(2 * LN2PI, abs=1e-4)
