"""Submeasures and their hat-norms, closed forms against the exact LP oracle.

A submeasure assigns a monotone, subadditive value to every finite set of
positive integers.  Each variant induces a norm on finite sequences: the
supremum of sum mu_i |x_i| over all measures mu dominated by the submeasure.
The library evaluates that norm twice -- by the variant's closed form and by
exact linear programming over the constraint polytope -- and this script
shows both, including the one place where they legitimately differ.
"""

from fractions import Fraction as F

from gbv import (
    counting,
    density,
    eval_set,
    harmonic_weights,
    hat_norm,
    hat_norm_oracle,
    identity_bound,
    max_with_unit,
    shift_normalize,
    sqrt_bound,
    summable,
    unit,
)

print("=== set values ===")
phi_h = summable(harmonic_weights(100))
phi_g = density(sqrt_bound())
print("unit({3,7})                 =", eval_set(unit(), {3, 7}))
print("counting({2,5,9})           =", eval_set(counting(), {2, 5, 9}))
print("harmonic-sum({1,2,4})       =", eval_set(phi_h, {1, 2, 4}))
print("sqrt-density({2,4,6,8})     =", eval_set(density(identity_bound()), {2, 4, 6, 8}))
print("shifted(unit)({2})          =", eval_set(shift_normalize(unit()), {2}))
print("max-with-unit(harm)({4})    =", eval_set(max_with_unit(phi_h), {4}))

print()
print("=== hat-norms: closed form vs exact LP oracle ===")
x = (3, -5, 2)
for phi, label in [(unit(), "unit      "), (counting(), "counting  "),
                   (phi_h, "harmonic  "), (density(identity_bound()), "density(n)")]:
    print(f"{label} hat{x} = {hat_norm(phi, x)}   oracle = {hat_norm_oracle(phi, x)}")

print()
print("The sup norm and the l1 norm are the unit and counting hat-norms:")
print("  unit hat    (3,-5,2) =", hat_norm(unit(), x), " (= max |x_i|)")
print("  counting hat(3,-5,2) =", hat_norm(counting(), x), "(= sum |x_i|)")

print()
print("=== where the density prefix formula is only a lower bound ===")
phi = density(identity_bound())
y = (F(7, 4), 0, 0, 5)
print("x =", y, " (late coordinate dominates, |x| not monotone)")
print("prefix formula  :", hat_norm(phi, y))
print("polytope optimum:", hat_norm_oracle(phi, y),
      " attained by mu = (3/4, 0, 0, 1/4)")
print("On sequences with nonincreasing |x| the two agree:")
z = (5, F(7, 4), 0, 0)
print("sorted x =", z, "->", hat_norm(phi, z), "=", hat_norm_oracle(phi, z))
