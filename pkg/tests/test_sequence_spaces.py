from fractions import Fraction as F

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbv.sequence_spaces import (
    MembershipCertificate,
    characteristic_prefix,
    exh_certificate,
    fin_certificate,
    is_monotone,
    sorted_rearrangement,
)
from gbv.submeasure import (
    WatermanWeights,
    counting,
    density,
    harmonic_weights,
    sqrt_bound,
    summable,
    unit,
)

rationals = st.fractions(min_value=-15, max_value=15, max_denominator=10)


def test_is_monotone_examples():
    assert is_monotone((3, 2, 2, 1))
    assert not is_monotone((1, 2))
    assert is_monotone((-4, 3, -3))
    assert is_monotone(())


def test_sorted_rearrangement_examples():
    assert sorted_rearrangement((1, 3, 2)).entries == (3, 2, 1)
    assert sorted_rearrangement((-5, 0, 5)).entries == (5, 5, 0)
    assert sorted_rearrangement(()).entries == ()


@given(st.lists(rationals, max_size=12))
@settings(max_examples=120, deadline=None)
def test_sorted_rearrangement_properties(x):
    srt = sorted_rearrangement(x)
    assert is_monotone(srt)
    assert sorted_rearrangement(srt).entries == srt.entries           # idempotent
    assert sorted(srt.entries) == sorted(abs(v) for v in x)           # multiset kept
    prefix_orig, prefix_sorted = 0, 0
    for i in range(len(x)):
        prefix_orig += abs(x[i])
        prefix_sorted += srt.entries[i]
        assert prefix_sorted >= prefix_orig                           # prefix dominance


def test_characteristic_prefix():
    assert characteristic_prefix({1, 3}, 4).entries == (1, 0, 1, 0)
    assert characteristic_prefix(set(), 3).entries == (0, 0, 0)
    assert characteristic_prefix(range(1, 5), 4).entries == (1, 1, 1, 1)
    with pytest.raises(ValueError):
        characteristic_prefix({5}, 4)


# ---------------------------------------------------------------------------
# FIN-style certificates
# ---------------------------------------------------------------------------

def test_fin_unit_all_ones_bounded():
    cert = fin_certificate(unit(), (1,) * 100)
    assert cert.verdict == "bounded-consistent"
    assert cert.params["level"] == 1.0


def test_fin_counting_all_ones_grows_linearly():
    cert = fin_certificate(counting(), (1,) * 200)
    assert cert.verdict == "growth-detected"
    assert cert.params["rate"] == pytest.approx(1.0, abs=0.01)


def test_fin_harmonic_all_ones_grows():
    cert = fin_certificate(summable(harmonic_weights(1000)), (1,) * 1000)
    assert cert.verdict == "growth-detected"


def test_fin_density_sqrt_reciprocal_sqrt_is_bounded_near_two():
    n = 10 ** 4
    x = 1.0 / np.sqrt(np.arange(1, n + 1))
    cert = fin_certificate(density(sqrt_bound()), x)
    assert cert.verdict == "bounded-consistent"
    assert 1.8 <= cert.params["level"] <= 2.0


def test_truncation_curve_is_nondecreasing_validated():
    with pytest.raises(ValueError):
        MembershipCertificate("fin", (2.0, 1.0), (), "bounded-consistent")
    with pytest.raises(ValueError):
        MembershipCertificate("exh", (), (1.0, 2.0), "tail-stuck")


# ---------------------------------------------------------------------------
# EXH-style certificates
# ---------------------------------------------------------------------------

def test_exh_counting_finite_support_reaches_zero():
    x = (3, -1, 2) + (0,) * 60
    cert = exh_certificate(counting(), x)
    assert cert.verdict == "tail-vanishing-consistent"
    assert cert.tail_by_cut[-1] == 0.0


def test_exh_unit_all_ones_stuck_at_one():
    cert = exh_certificate(unit(), (1,) * 500)
    assert cert.verdict == "tail-stuck"
    assert cert.params["level"] == 1.0


def test_exh_harmonic_on_squares_vanishes():
    n = 10 ** 6
    x = np.zeros(n)
    squares = np.arange(1, 1001) ** 2
    x[squares - 1] = 1.0
    cert = exh_certificate(summable(harmonic_weights(16)), x)
    assert cert.verdict == "tail-vanishing-consistent"


def test_exh_shifted_only_toy_vanishes():
    # a convergent weight table (the dyadic tail alone) is the smallest
    # example with vanishing tail under the all-ones sequence
    geo = WatermanWeights([F(1, 2 ** n) for n in range(1, 40)], form="table",
                          declared_divergent=False)
    cert = exh_certificate(summable(geo), (1,) * 39)
    assert cert.verdict == "tail-vanishing-consistent"
    cert2 = exh_certificate(counting(), (1,) * 500)
    assert cert2.verdict == "tail-stuck"


def test_mexh_inside_mfin_at_certificate_level():
    # tail-vanishing with a finite initial level implies a bounded
    # truncation curve
    rng = np.random.default_rng(7)
    for _ in range(20):
        n = 400
        x = np.zeros(n)
        support = rng.integers(0, 80, size=30)
        x[support] = rng.uniform(-3, 3, size=30)
        for phi in (counting(), unit(), summable(harmonic_weights(n))):
            exh = exh_certificate(phi, x)
            if exh.verdict == "tail-vanishing-consistent" and np.isfinite(exh.params["initial"]):
                assert fin_certificate(phi, x).verdict == "bounded-consistent"


def test_payload_field_names():
    payload = fin_certificate(unit(), (1, 2)).to_payload()
    assert set(payload) == {"truncation_norms", "tail_norms", "verdict", "params"}
