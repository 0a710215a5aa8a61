"""Variation functionals of piecewise-linear functions.

Jordan variation, the n-interval modulus of variation, and the general
weighted variation: the hat-norm of the oscillation vector over the best
family of nonoverlapping intervals.  The brute-force enumeration over
breakpoint families is exact for this function model and arbitrates the
fast estimators: greedy (sorted monotone runs, a lower bound) and the
modulus-increment upper bound.
"""

from fractions import Fraction as F

from gbv import (
    abv_norm,
    bv_norm,
    counting,
    density,
    harmonic_weights,
    identity_bound,
    jordan_variation,
    modulus_of_variation,
    monotone_runs,
    ones_weights,
    pl_from_points,
    runs_saturate_modulus,
    summable,
    unit,
    variation_bruteforce,
    variation_greedy,
    variation_upper_bound,
    weights_from_values,
)

zig = pl_from_points([(0, 0), (F(1, 4), 4), (F(1, 2), 1), (F(3, 4), 3), (1, 0)])
print("zig-zag through values (0, 4, 1, 3, 0)")
print("  monotone runs      :", monotone_runs(zig))
print("  Jordan variation   :", jordan_variation(zig))
print("  modulus vector     :", modulus_of_variation(zig).values)
print("    (two intervals reach 8: [0,1/4] rises by 4 and [1/4,1] falls by 4)")

A = weights_from_values([F(1), F(1, 2), F(1, 3), F(1, 4)], declared_divergent=False)
phi = summable(A)
print("  weights (1, 1/2, 1/3, 1/4):")
print("    greedy =", variation_greedy(zig, phi),
      " brute =", variation_bruteforce(zig, phi),
      " upper =", variation_upper_bound(zig, phi))

print()
print("=== greedy is only a lower bound when runs merge ===")
f = pl_from_points([(0, 0), (F(1, 3), 4), (F(2, 3), 1), (1, 5)])
print("values (0, 4, 1, 5): runs", monotone_runs(f),
      "but osc([0,1]) =", abs(f(1) - f(0)))
print("  runs saturate the modulus?", runs_saturate_modulus(f))
fast_decay = summable(weights_from_values([F(1), F(1, 100), F(1, 100)]))
print("  weights (1, 1/100, 1/100): greedy =", variation_greedy(f, fast_decay),
      " brute =", variation_bruteforce(f, fast_decay),
      " upper =", variation_upper_bound(f, fast_decay))
print("  density profile g(n)=n   : greedy =", variation_greedy(f, density(identity_bound())),
      " brute =", variation_bruteforce(f, density(identity_bound())),
      "(= max_k v(k)/g(k))")

print()
print("=== norms ===")
print("|f(0)| + variation, zig-zag:")
print("  all-ones weights ->", abv_norm(zig, ones_weights(4)),
      "(reduces to the Jordan variation)")
print("  harmonic weights ->", abv_norm(zig, harmonic_weights(4)))
print("  unit submeasure  ->", bv_norm(zig, unit()), "(largest single oscillation)")
print("  counting         ->", bv_norm(zig, counting()))
