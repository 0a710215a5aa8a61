"""Finite-horizon certificates for the sequence spaces FIN and EXH.

FIN(phi) collects the sequences of finite hat-norm, EXH(phi) those whose
tail hat-norm vanishes.  Membership is a fact about the infinite tail, so
the library only ever reports curves and "consistent with" verdicts.  The
classical landmarks: the unit submeasure gives the bounded sequences with
the sup norm, counting gives the absolutely summable ones.
"""

import numpy as np

from gbv import (
    counting,
    density,
    exh_certificate,
    fin_certificate,
    harmonic_weights,
    sqrt_bound,
    summable,
    unit,
)

ones = (1,) * 200

print("=== the all-ones sequence ===")
for phi, label in [(unit(), "unit    "), (counting(), "counting"),
                   (summable(harmonic_weights(200)), "harmonic")]:
    fin = fin_certificate(phi, ones)
    exh = exh_certificate(phi, ones)
    print(f"{label}: FIN curve -> {fin.verdict:20s}  EXH curve -> {exh.verdict}")
print("(bounded sequences lie in FIN(unit) but the tail never vanishes;")
print(" under counting the partial sums grow linearly: not summable)")

print()
print("=== a sequence tuned to a density profile ===")
n = 10 ** 4
x = 1.0 / np.sqrt(np.arange(1.0, n + 1))
cert = fin_certificate(density(sqrt_bound()), x)
print(f"x_i = 1/sqrt(i), sqrt-density profile: {cert.verdict}")
print(f"  level {cert.params['level']:.4f} (prefix sums ~ 2 sqrt(n) against g ~ sqrt(n))")

print()
print("=== vanishing tails ===")
squares = np.zeros(10 ** 5)
squares[np.arange(1, 317) ** 2 - 1] = 1.0
cert = exh_certificate(summable(harmonic_weights(16)), squares)
print("indicator of the squares under harmonic weights:", cert.verdict)
print(f"  initial tail {cert.params['initial']:.4f} -> final {cert.params['final']:.2e}")

finite = (3.0, -1.0, 2.0) + (0.0,) * 60
cert = exh_certificate(counting(), finite)
print("finitely supported sequence under counting:", cert.verdict,
      f"(final tail exactly {cert.tail_by_cut[-1]})")
