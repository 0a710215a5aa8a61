import math
import random
from fractions import Fraction as F

import numpy as np
import pytest

from gbv.orders import (
    ComparisonReport,
    KatetovPartition,
    ideal_criterion_c,
    katetov_partition_build,
    katetov_scan,
    preceq_density,
    preceq_m_summable,
    preceq_summable,
    tallness_hint,
)
from gbv.submeasure import (
    DensityBound,
    WatermanWeights,
    counting,
    density,
    harmonic_weights,
    hat_norm,
    identity_bound,
    ones_weights,
    sqrt_bound,
    summable,
    unit,
)


def sqrt_weights(n):
    return WatermanWeights([F(1, math.isqrt(k - 1) + 1) for k in range(1, n + 1)],
                           form="table")


# ---------------------------------------------------------------------------
# preceq for density bounds
# ---------------------------------------------------------------------------

def test_preceq_density_identity_pair():
    r = preceq_density(sqrt_bound(), sqrt_bound(), horizon=2000)
    assert r.verdict == "holds-with-constant"
    assert r.bound_estimate == 1


def test_preceq_density_sqrt_below_identity():
    r = preceq_density(sqrt_bound(), identity_bound(), horizon=10 ** 4)
    assert r.verdict == "holds-with-constant"
    assert r.bound_estimate == 1              # max ceil(sqrt(n))/n is 1 at n = 1, 2


def test_preceq_density_violation_first_crossing():
    r = preceq_density(identity_bound(), sqrt_bound(), horizon=10 ** 4, cap=50)
    assert r.verdict == "violated-by-witness"
    assert float(r.bound_estimate) == 100.0   # ratio n/ceil(sqrt n) at n = 10^4
    # first n with n/ceil(sqrt n) >= 50 is n = 2500 (ceil(sqrt 2500) = 50)
    assert len(r.witness.entries) == 2500
    cert = r.details["witness_certificate"]
    assert cert.all_passed


def test_preceq_density_soundness_on_random_sequences():
    g, h = sqrt_bound(), identity_bound()
    eta = float(preceq_density(g, h, horizon=500).bound_estimate)
    rng = random.Random(5)
    phi_g, phi_h = density(g), density(h)
    for _ in range(100):
        x = [rng.uniform(-4, 4) for _ in range(rng.randint(1, 120))]
        assert float(hat_norm(phi_h, x)) <= eta * float(hat_norm(phi_g, x)) * (1 + 1e-12)


def test_preceq_density_horizon_mismatch():
    table = DensityBound("table", table=[1, 2, 3, 4])
    with pytest.raises(ValueError):
        preceq_density(table, identity_bound(), horizon=10)


# ---------------------------------------------------------------------------
# preceq / preceq_m for weighted sums
# ---------------------------------------------------------------------------

def test_preceq_summable_examples():
    h = harmonic_weights(100)
    assert preceq_summable(h, h).bound_estimate == 1
    assert preceq_summable(h, h).verdict == "holds-with-constant"
    half = WatermanWeights([F(1, 2 * n) for n in range(1, 101)], form="table")
    assert preceq_summable(h, half).bound_estimate == F(1, 2)
    with pytest.raises(ValueError):
        preceq_summable(h, harmonic_weights(50))


def test_preceq_summable_sqrt_witness():
    r = preceq_summable(harmonic_weights(10 ** 4), sqrt_weights(10 ** 4), cap=50)
    assert r.verdict == "violated-by-witness"
    assert float(r.bound_estimate) == 100.0
    assert r.details["witness_index"] == 2500
    assert r.witness.entries[-1] == 1 and len(r.witness.entries) == 2500


def test_preceq_m_examples():
    ones = ones_weights(10 ** 4)
    h = harmonic_weights(10 ** 4)
    r = preceq_m_summable(ones, h)
    assert float(r.bound_estimate) == 1.0 and r.details["argmax"] == 1
    assert r.verdict == "holds-with-constant"
    r2 = preceq_m_summable(h, ones)
    assert r2.verdict == "violated-by-witness"
    assert float(r2.bound_estimate) == pytest.approx(10 ** 4 / sum(1 / k for k in range(1, 10 ** 4 + 1)))
    assert float(r2.bound_estimate) > 10 ** 3
    assert set(r2.witness.entries) == {1}


def test_preceq_m_abel_soundness():
    # eta from the partial-sum ratio dominates hat-norm ratios on the
    # monotone cone (summation by parts)
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(2, 30)
        A = WatermanWeights(sorted([F(rng.randint(1, 40), rng.randint(1, 6))
                                    for _ in range(n)], reverse=True), form="table")
        B = WatermanWeights(sorted([F(rng.randint(1, 40), rng.randint(1, 6))
                                    for _ in range(n)], reverse=True), form="table")
        eta = preceq_m_summable(A, B, cap=10 ** 9).bound_estimate
        x = tuple(sorted((F(rng.randint(0, 20), rng.randint(1, 5)) for _ in range(n)),
                         reverse=True))
        assert hat_norm(summable(B), x) <= eta * hat_norm(summable(A), x)


def test_preceq_transitivity_at_horizon():
    g1, g2, g3 = identity_bound(), sqrt_bound(), DensityBound("power", F(1, 3))
    n = 500
    e12 = preceq_density(g2, g1, horizon=n).bound_estimate
    e23 = preceq_density(g3, g2, horizon=n).bound_estimate
    e13 = preceq_density(g3, g1, horizon=n).bound_estimate
    assert e13 <= e12 * e23


# ---------------------------------------------------------------------------
# Katetov scan and partition
# ---------------------------------------------------------------------------

def test_katetov_scan_identity_consistent():
    h = harmonic_weights(500)
    assert katetov_scan(h, h, 1).verdict == "consistent-up-to-horizon"


def test_katetov_scan_examples():
    r = katetov_scan(harmonic_weights(1000), ones_weights(1000), 2)
    assert r.verdict == "violated-by-witness"
    assert r.witness == (4, 3)
    r2 = katetov_scan(ones_weights(1000), harmonic_weights(1000), 1)
    assert r2.verdict == "consistent-up-to-horizon"
    with pytest.raises(ValueError):
        katetov_scan(harmonic_weights(10), ones_weights(10), 0)


def _exhaustive(A, B, M):
    a = np.array([float(v) for v in A.values])
    b = np.array([float(v) for v in B.values])
    asum, bsum = np.cumsum(a), np.cumsum(b)
    for k in range(1, len(a) + 1):
        hits = np.nonzero((bsum[k - 1] >= M * asum) & (b[k - 1] > M * a))[0]
        if len(hits):
            return (k, int(hits[0]) + 1)
    return None


def test_katetov_two_pointer_matches_exhaustive():
    rng = random.Random(13)
    for _ in range(25):
        n = 300

        def rand_w():
            vals, cur = [], rng.uniform(0.5, 3.0)
            for _ in range(n):
                vals.append(cur)
                cur *= rng.uniform(0.88, 1.0)
            return WatermanWeights(vals, form="table")

        A, B = rand_w(), rand_w()
        M = rng.choice((0.5, 1.0, 2.0, 4.0))
        fast = katetov_scan(A, B, M)
        pair = fast.witness if fast.verdict == "violated-by-witness" else None
        assert pair == _exhaustive(A, B, M)


def test_partition_identity_blocks_are_singletons():
    h = harmonic_weights(50)
    part = katetov_partition_build(h, h, F(1, 2), 2, max_blocks=10)
    assert part.complete
    assert part.intervals[:5] == ((1, 1), (2, 2), (3, 3), (4, 4), (5, 5))


def test_partition_harmonic_blocks():
    part = katetov_partition_build(ones_weights(30), harmonic_weights(10 ** 4),
                                   F(1, 2), 2, max_blocks=12)
    assert part.complete
    assert part.intervals[0] == (1, 1)
    assert part.intervals[1] == (2, 3)        # 1/2 + 1/3: first sum beyond 1/2
    assert part.block_sums[1] == F(5, 6)
    for s in part.block_sums:
        assert F(1, 2) <= s <= 2


def test_partition_failure_reported():
    part = katetov_partition_build(harmonic_weights(100), ones_weights(100), 1, 1,
                                   max_blocks=10)
    assert not part.complete
    assert part.failure_index == 1
    assert part.failure_reason == "overshoot"


def test_partition_consecutiveness_validated():
    with pytest.raises(ValueError):
        KatetovPartition(((1, 2), (4, 5)), 1, 2, (1, 1))


def test_partition_success_implies_scan_consistency():
    # a complete (m, M) partition of a prefix forces the scan to be
    # consistent at any level above M on that prefix
    rng = random.Random(17)
    for _ in range(15):
        n = 60
        vals = sorted([F(rng.randint(2, 40), rng.randint(1, 4)) for _ in range(n)],
                      reverse=True)
        A = WatermanWeights(vals, form="table")
        B = WatermanWeights(sorted([v * F(rng.randint(8, 12), 10) for v in vals],
                                   reverse=True), form="table")
        m, M = F(1, 2), F(3)
        part = katetov_partition_build(A, B, m, M, max_blocks=12)
        if not part.complete:
            continue
        covered = part.intervals[-1][1]
        r = katetov_scan(WatermanWeights(A.values[:covered], form="table"),
                         WatermanWeights(B.values[:covered], form="table"), M + m)
        assert r.verdict == "consistent-up-to-horizon"


def test_partition_deep_blocks_via_closed_form():
    part = katetov_partition_build(ones_weights(4), harmonic_weights(10 ** 4),
                                   F(1, 2), 2, max_blocks=100)
    assert len(part.intervals) == 100
    assert part.intervals[-1][1] > 10 ** 20   # block ends grow like e^(n/2)
    for s in part.block_sums:
        assert 0.5 - 1e-9 <= float(s) <= 2 + 1e-9


# ---------------------------------------------------------------------------
# ideal criterion and tallness
# ---------------------------------------------------------------------------

def test_criterion_c_counting_pair():
    r = ideal_criterion_c(counting(), counting(), horizon=14, M=2)
    assert r.verdict == "consistent-up-to-horizon"


def test_criterion_c_unit_vs_counting():
    r = ideal_criterion_c(unit(), counting(), horizon=15, M=3)
    assert r.verdict == "consistent-up-to-horizon"


def test_criterion_c_unit_dominated_by_harmonic():
    # only the empty set has unit value <= 1/2, so the criterion holds
    r = ideal_criterion_c(unit(), summable(harmonic_weights(18)), horizon=18, M=2)
    assert r.verdict == "consistent-up-to-horizon"


def test_criterion_c_density_pair_interval_scan():
    r = ideal_criterion_c(density(identity_bound()), density(sqrt_bound()),
                          horizon=10 ** 4, M=4)
    assert r.verdict == "violated-by-witness"
    F_set = r.witness
    phi1, phi2 = density(identity_bound()), density(sqrt_bound())
    assert phi1.set_value(F_set) <= F(1, 4)
    assert phi2.set_value(F_set) >= 4
    assert r.details["mode"] == "intervals"


def test_criterion_c_exhaustive_finds_non_interval_witnesses():
    r = ideal_criterion_c(summable(harmonic_weights(12)), counting(), horizon=12,
                          M=2, exhaustive_limit=20)
    # phi1(F) <= 1/2 needs small harmonic mass, phi2 = |F| >= 2: {7, 8} works
    assert r.verdict == "violated-by-witness"
    assert summable(harmonic_weights(12)).set_value(r.witness) <= F(1, 2)
    assert len(r.witness) >= 2


def test_report_invariants():
    with pytest.raises(ValueError):
        ComparisonReport("preceq", 1, "violated-by-witness", None)
    with pytest.raises(ValueError):
        ComparisonReport("preceq", 1, "consistent-up-to-horizon", (1, 2))


def test_tallness():
    assert tallness_hint(harmonic_weights(100)) == "tall-consistent"
    assert tallness_hint(ones_weights(100)) == "not-tall-consistent"
    drift = WatermanWeights([F(1, 2) + F(1, n) for n in range(1, 101)], form="table")
    assert tallness_hint(drift) == "not-tall-consistent"
    small = WatermanWeights([F(1, n * n) for n in range(1, 101)], form="table")
    assert tallness_hint(small) == "tall-consistent"


def test_density_bound_valid_on_monotone_and_general_alike():
    # the ratio bound for density pairs needs no monotonicity, so the
    # domination constant shows no discrepancy between the two cones
    g, h = sqrt_bound(), identity_bound()
    eta = preceq_density(g, h, horizon=300).bound_estimate
    phi_g, phi_h = density(g), density(h)
    rng = random.Random(51)
    worst_general = worst_mono = 0.0
    for _ in range(200):
        x = [F(rng.randint(0, 30), rng.randint(1, 6)) for _ in range(rng.randint(1, 40))]
        for vec in (x, sorted(x, reverse=True)):
            denom = hat_norm(phi_g, vec)
            if denom:
                r = float(hat_norm(phi_h, vec) / denom)
                if vec is x:
                    worst_general = max(worst_general, r)
                else:
                    worst_mono = max(worst_mono, r)
    assert worst_general <= float(eta) + 1e-12
    assert worst_mono <= float(eta) + 1e-12


def test_preceq_m_identical_weights_bound_one():
    h = harmonic_weights(64)
    r = preceq_m_summable(h, h)
    assert r.bound_estimate == 1
    assert r.verdict == "holds-with-constant"
