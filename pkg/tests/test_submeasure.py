import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gbv._util import HorizonExceeded
from gbv.submeasure import (
    WatermanWeights,
    counting,
    density,
    density_from_table,
    eval_set,
    harmonic_weights,
    hat_norm,
    identity_bound,
    log_bound,
    log_weights,
    max_with_unit,
    ones_weights,
    permuted,
    power_weights,
    shift_normalize,
    sqrt_bound,
    summable,
    tail_norm,
    unit,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
small_seqs = st.lists(rationals, min_size=0, max_size=10).map(tuple)


def harmonic8():
    return summable(harmonic_weights(8))


# ---------------------------------------------------------------------------
# set values
# ---------------------------------------------------------------------------

def test_unit_set_values():
    u = unit()
    assert eval_set(u, {3, 7}) == 1
    assert eval_set(u, []) == 0


def test_counting_set_values():
    c = counting()
    assert eval_set(c, []) == 0
    assert eval_set(c, [5, 2, 2]) == 2


def test_summable_closed_form():
    phi = summable(harmonic_weights(10))
    assert eval_set(phi, [1, 2, 4]) == F(7, 4)


def test_density_identity_example():
    phi = density(identity_bound())
    assert eval_set(phi, [2, 4, 6, 8]) == F(1, 2)


def test_sqrt_bound_values():
    g = sqrt_bound()
    assert [g.g(n) for n in range(1, 11)] == [1, 2, 2, 2, 3, 3, 3, 3, 3, 4]
    assert g.g(2500) == 50
    assert g.g(2501) == 51


def test_log_bound_values():
    g = log_bound()
    assert [g.g(n) for n in range(1, 9)] == [1, 2, 2, 3, 3, 3, 3, 4]


def test_shifted_set_values():
    assert eval_set(shift_normalize(unit()), [2]) == F(5, 4)
    assert eval_set(shift_normalize(counting()), []) == 0
    assert eval_set(shift_normalize(density(identity_bound())), [1]) == F(3, 2)


def test_max_with_unit_set_values():
    assert eval_set(max_with_unit(harmonic8()), [4]) == 1
    assert eval_set(max_with_unit(counting()), [1, 2]) == 2
    assert eval_set(max_with_unit(harmonic8()), []) == 0


def test_permuted_set_value_is_base_on_image():
    phi = harmonic8()
    psi = permuted(phi, (2, 1, 3, 4, 5, 6, 7, 8))
    assert eval_set(psi, [1]) == F(1, 2)
    assert eval_set(psi, [1, 2]) == eval_set(phi, [1, 2])


# ---------------------------------------------------------------------------
# hat norms
# ---------------------------------------------------------------------------

def test_hat_norm_examples():
    assert hat_norm(unit(), (3, -5, 2)) == 5
    assert hat_norm(counting(), (1, 1, 1)) == 3
    assert hat_norm(density(identity_bound()), (4, 2, 0)) == 4
    assert hat_norm(harmonic8(), (1, 1, 1)) == F(11, 6)


def test_shifted_hat_adds_dyadic_part():
    phi = shift_normalize(unit())
    assert hat_norm(phi, (1, 1)) == 1 + F(1, 2) + F(1, 4)


def test_tail_norm_examples():
    assert tail_norm(counting(), (1, 1, 1), 2) == 2
    assert tail_norm(counting(), (1, 1, 1), 1) == hat_norm(counting(), (1, 1, 1))
    assert tail_norm(harmonic8(), (1, 1, 1, 1), 3) == F(1, 3) + F(1, 4)
    with pytest.raises(ValueError):
        tail_norm(counting(), (1, 1), 3)


def test_characteristic_identity_every_variant():
    # hat of an indicator vector equals the set value, for every variant
    variants = [unit(), counting(), harmonic8(), density(sqrt_bound()),
                shift_normalize(harmonic8()),
                permuted(harmonic8(), (3, 1, 2, 4, 5, 6, 7, 8)),
                max_with_unit(harmonic8())]
    C = [2, 3, 5]
    x = tuple(1 if i in C else 0 for i in range(1, 9))
    for phi in variants:
        assert hat_norm(phi, x) == eval_set(phi, C), repr(phi)


@given(small_seqs, rationals)
@settings(max_examples=150, deadline=None)
def test_hat_homogeneity(x, c):
    for phi in (unit(), counting(), summable(harmonic_weights(12))):
        scaled = tuple(c * v for v in x)
        assert hat_norm(phi, scaled) == abs(c) * hat_norm(phi, x)


@given(small_seqs, small_seqs)
@settings(max_examples=150, deadline=None)
def test_hat_triangle(x, y):
    n = max(len(x), len(y))
    x = x + (0,) * (n - len(x))
    y = y + (0,) * (n - len(y))
    for phi in (unit(), counting(), summable(harmonic_weights(12)),
                density(sqrt_bound())):
        assert hat_norm(phi, tuple(a + b for a, b in zip(x, y))) \
            <= hat_norm(phi, x) + hat_norm(phi, y)


@given(small_seqs)
@settings(max_examples=100, deadline=None)
def test_monotone_rearrangement_domination(x):
    # sorting |x| nonincreasing dominates every prefix sum, so the hat-norm
    # cannot drop for weighted-sum and density variants
    srt = tuple(sorted((abs(v) for v in x), reverse=True))
    for phi in (summable(harmonic_weights(12)), density(sqrt_bound()),
                counting()):
        assert hat_norm(phi, srt) >= hat_norm(phi, x)


def test_truncation_and_tail_fast_paths_match_hat():
    import numpy as np

    x = (3, -1, F(1, 2), 0, 2, -5)
    for phi in (unit(), counting(), harmonic8(), density(sqrt_bound()),
                shift_normalize(harmonic8())):
        trunc = phi.truncation_norms(np.array([float(v) for v in x]))
        tails = phi.tail_norms(np.array([float(v) for v in x]))
        for n in range(1, len(x) + 1):
            assert trunc[n - 1] == pytest.approx(float(hat_norm(phi, x[:n])), rel=1e-12)
            assert tails[n - 1] == pytest.approx(float(tail_norm(phi, x, n)), rel=1e-12)


# ---------------------------------------------------------------------------
# submeasure axioms, exhaustively on {1..10}
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("make", [
    unit, counting,
    lambda: summable(harmonic_weights(10)),
    lambda: density(sqrt_bound()),
    lambda: shift_normalize(density(identity_bound())),
    lambda: max_with_unit(summable(harmonic_weights(10))),
    lambda: permuted(summable(harmonic_weights(10)), (4, 2, 7, 1, 10, 3, 9, 5, 8, 6)),
])
def test_monotone_and_subadditive_exhaustive(make):
    phi = make()
    n = 10
    values = [phi.set_value([i + 1 for i in range(n) if mask >> i & 1])
              for mask in range(1 << n)]
    assert values[0] == 0
    for mask in range(1 << n):
        for j in range(n):
            if not mask >> j & 1:
                assert values[mask] <= values[mask | 1 << j]
    # subadditivity over all pairs
    for a in range(1 << n):
        va = values[a]
        for b in range(a, 1 << n):
            assert values[a | b] <= va + values[b]


# ---------------------------------------------------------------------------
# validation and horizons
# ---------------------------------------------------------------------------

def test_waterman_validation():
    with pytest.raises(ValueError):
        WatermanWeights([1, 2])           # increasing
    with pytest.raises(ValueError):
        WatermanWeights([1, 0])           # zero entry
    w = WatermanWeights([F(1), F(1, 2)], form="table")
    assert not w.declared_divergent
    assert harmonic_weights(4).declared_divergent
    assert not power_weights(2, 4).declared_divergent
    assert power_weights(F(1, 2), 4).declared_divergent


def test_density_table_validation():
    with pytest.raises(ValueError):
        density_from_table([2, 1])        # decreasing
    with pytest.raises(ValueError):
        density_from_table([2, 2, 2])     # never grows
    with pytest.raises(ValueError):
        density_from_table([1, 2, 2, 2, 3])   # ratio 4/2 -> 5/3 drops
    density_from_table([1, 2, 3, 4])      # the diagonal is fine


def test_horizon_errors():
    phi = summable(WatermanWeights([F(1), F(1, 2)], form="table"))
    with pytest.raises(HorizonExceeded):
        eval_set(phi, [3])
    with pytest.raises(HorizonExceeded):
        hat_norm(phi, (1, 1, 1))
    closed = summable(harmonic_weights(4))
    assert eval_set(closed, [9]) == F(1, 9)   # closed form evaluates past the prefix


def test_log_weights_partial_sums():
    w = log_weights(10)
    assert w.partial_sum_exact(10) == F(49, 12)
    assert w.partial_sum(10) == pytest.approx(float(F(49, 12)))


def test_harmonic_asymptotic_partial_sum():
    w = harmonic_weights(8)
    n = 10 ** 7
    expected = math.log(n) + 0.5772156649015329 + 1 / (2 * n)
    assert w.partial_sum(n) == pytest.approx(expected, abs=1e-10)


def test_deep_weight_values():
    w = harmonic_weights(4)
    assert w.value_at(10 ** 9) == F(1, 10 ** 9)
    assert ones_weights(2).value_at(10 ** 12) == 1
    assert log_weights(2).value_at(7) == F(1, 3)


@given(small_seqs)
@settings(max_examples=100, deadline=None)
def test_truncation_nondecreasing_tail_nonincreasing(x):
    # lower semicontinuity at the finite level: truncation hat-norms grow to
    # the full hat-norm; cutting more of the head never raises a tail norm
    for phi in (unit(), counting(), summable(harmonic_weights(12)),
                density(sqrt_bound())):
        prev = 0
        for n in range(1, len(x) + 1):
            cur = hat_norm(phi, x[:n])
            assert cur >= prev
            prev = cur
        if x:
            assert prev == hat_norm(phi, x)
            tails = [tail_norm(phi, x, n) for n in range(1, len(x) + 1)]
            assert all(tails[i] >= tails[i + 1] for i in range(len(tails) - 1))
            assert tails[0] == hat_norm(phi, x)


def test_empty_sequence_hat_norm_is_zero():
    for phi in (unit(), counting(), summable(harmonic_weights(4)),
                density(sqrt_bound()), shift_normalize(unit()),
                max_with_unit(counting())):
        assert hat_norm(phi, ()) == 0
