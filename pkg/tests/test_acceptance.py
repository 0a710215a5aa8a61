"""Acceptance gate: every exit criterion at its stated tolerance.

Each test runs one criterion from :mod:`gbv.selftest` (the same code the CLI
``selftest`` subcommand executes) and prints its PASS/FAIL line, so
``pytest -v tests/test_acceptance.py`` doubles as the acceptance report.

Budgets (wall-clock ceilings from the criteria themselves) are asserted
where one is stated: 10s for the hat-norm oracle battery, 60s for the
variation oracle battery, 30s for the modulus battery, 120s for the
separation run.
"""

import pytest

from gbv import selftest


def _run(criterion, budget=None):
    result = criterion()
    print()
    print(result.line())
    assert result.passed, result.detail
    if budget is not None:
        assert result.elapsed < budget, f"over budget: {result.elapsed:.1f}s >= {budget}s"
    return result


def test_criterion_01_hat_norm_oracle_agreement():
    _run(selftest.criterion_1_oracle_agreement, budget=10)


def test_criterion_02_variation_oracle_agreement():
    _run(selftest.criterion_2_variation_oracle, budget=60)


def test_criterion_03_jordan_reduction():
    _run(selftest.criterion_3_jordan_reduction)


def test_criterion_04_modulus_of_variation():
    _run(selftest.criterion_4_modulus, budget=30)


def test_criterion_05_order_soundness():
    result = _run(selftest.criterion_5_order_soundness)
    assert "1021" in result.detail          # n / H_n at n = 10^4


def test_criterion_06_katetov_scan_and_partition():
    _run(selftest.criterion_6_katetov)


def test_criterion_07_zigzag_identity():
    _run(selftest.criterion_7_zigzag_identity)


def test_criterion_08_separation_at_depth_three():
    result = _run(selftest.criterion_8_separation, budget=120)
    assert "n_i" in result.detail


def test_criterion_09_example_reproductions():
    _run(selftest.criterion_9_reproductions)


def test_criterion_10_norm_axioms():
    _run(selftest.criterion_10_norm_axioms)
