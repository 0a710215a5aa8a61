"""Order and inclusion checks between spaces, to a horizon, with witnesses.

Whether one variation space contains another reduces to growth comparisons:
g = O(h) for density profiles, partial-sum domination for weight sequences,
and for the ideals of summable weight sequences the Katetov comparison has
two computable faces -- a partial-sum/entry scan and an explicit partition
of the indices into blocks with two-sided weight bounds.
"""

from fractions import Fraction as F

from gbv import (
    counting,
    density,
    harmonic_weights,
    ideal_criterion_c,
    identity_bound,
    katetov_partition_build,
    katetov_scan,
    ones_weights,
    preceq_density,
    preceq_m_summable,
    sqrt_bound,
    unit,
)

print("=== density profiles: sqrt vs identity ===")
r = preceq_density(sqrt_bound(), identity_bound(), horizon=10 ** 4)
print(f"ceil(sqrt n) = O(n): {r.verdict} with constant {r.bound_estimate}")
r = preceq_density(identity_bound(), sqrt_bound(), horizon=10 ** 4, cap=50)
print(f"n = O(ceil(sqrt n)): {r.verdict}; ratio reaches {float(r.bound_estimate):.0f}, "
      f"witness: flat prefix of length {len(r.witness.entries)}")

print()
print("=== weight sequences: partial-sum domination (monotone cone) ===")
h, ones = harmonic_weights(10 ** 4), ones_weights(10 ** 4)
r = preceq_m_summable(ones, h)
print(f"1/n against 1: bound {float(r.bound_estimate):.3f} at n={r.details['argmax']} -> {r.verdict}")
r = preceq_m_summable(h, ones, cap=10 ** 3)
print(f"1 against 1/n: bound {float(r.bound_estimate):.1f} at n={r.details['argmax']} -> {r.verdict}")
print(f"  the flat witness chi_1..n* attains the ratio exactly")

print()
print("=== Katetov order between summable ideals ===")
r = katetov_scan(harmonic_weights(1000), ones_weights(1000), 2)
print("ideal(1/n) vs ideal(1) at level 2:", r.verdict, "pair (k,l) =", r.witness)
r = katetov_scan(ones_weights(1000), harmonic_weights(1000), 1)
print("ideal(1) vs ideal(1/n) at level 1:", r.verdict)

part = katetov_partition_build(ones_weights(8), harmonic_weights(10 ** 4),
                               F(1, 2), 2, max_blocks=100)
print(f"\nblock partition (a=1, b=1/n, bounds [1/2, 2]): {len(part.intervals)} blocks")
print("  first blocks:", part.intervals[:4])
print("  first sums  :", [str(s) for s in part.block_sums[:3]])
print(f"  block ends grow like e^(n/2); block 100 ends at {part.intervals[-1][1]:.3e}")

print()
print("=== the finite-set inclusion criterion ===")
r = ideal_criterion_c(unit(), counting(), horizon=15, M=3)
print("unit vs counting at M=3 (exhaustive subsets):", r.verdict)
r = ideal_criterion_c(density(identity_bound()), density(sqrt_bound()),
                      horizon=10 ** 4, M=4)
w = sorted(r.witness)
print(f"identity vs sqrt density at M=4: {r.verdict}, F = [{w[0]}..{w[-1]}]")
print("  (phi_1(F) <= 1/4 while phi_2(F) >= 4: the witness interval separates)")
