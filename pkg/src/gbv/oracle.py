"""Exact hat-norm oracle: linear programming over the dominated-measure polytope.

The hat-norm of a sequence x under a submeasure phi is by definition

    sup { sum_i mu_i |x_i| : mu_i >= 0,  sum_{i in S} mu_i <= phi(S) for all S }

with S ranging over the finite subsets of the support of x.  This module
solves that linear program literally, in exact rational arithmetic, using a
dense-tableau simplex with Bland's rule plus constraint generation (the
polytope has 2^k - 1 facet candidates for support size k, but at most k of
them bind at an optimum, so we grow the working set on demand and certify
optimality with an exact scan over every subset).

The oracle only consumes phi through ``set_value`` and is therefore an
independent check of every closed-form hat-norm in :mod:`gbv.submeasure`.
It refuses supports larger than :data:`ORACLE_MAX_LEN` coordinates.
"""

from __future__ import annotations

from fractions import Fraction

from ._util import SizeRefusal, all_exact
from .submeasure import Submeasure, as_entries

ORACLE_MAX_LEN = 12


def hat_norm_oracle(phi: Submeasure, x, max_len: int = ORACLE_MAX_LEN):
    """Exact maximum of sum mu_i |x_i| over measures dominated by phi.

    Arithmetic is rational throughout (float inputs are converted exactly),
    so the result is the true LP value of the represented data.  Returns a
    Fraction when both phi and x are exact, else a float.
    """
    entries = as_entries(x)
    if len(entries) > max_len:
        raise SizeRefusal(
            f"oracle limited to {max_len} coordinates (got {len(entries)}): "
            "the constraint set is exponential in the support size")
    exact = phi.is_exact() and all_exact(entries)

    support = [i + 1 for i, v in enumerate(entries) if v]
    k = len(support)
    if k == 0:
        return Fraction(0) if exact else 0.0
    cost = [abs(Fraction(entries[i - 1])) for i in support]

    # phi over every nonempty subset of the support, indexed by bitmask.
    phi_table = [Fraction(0)] * (1 << k)
    members = [()] * (1 << k)
    for mask in range(1, 1 << k):
        members[mask] = tuple(support[j] for j in range(k) if mask >> j & 1)
        phi_table[mask] = Fraction(phi.set_value(members[mask]))

    # Working set warm start: singletons bound each variable (keeps every
    # relaxation bounded), plus the full set and the prefixes of the
    # coordinates sorted by descending cost, which are the binding sets for
    # the shipped closed forms.
    working = []
    seen = set()

    def add(mask):
        if mask and mask not in seen:
            seen.add(mask)
            working.append(mask)

    for j in range(k):
        add(1 << j)
    order = sorted(range(k), key=lambda j: (-cost[j], j))
    mask = 0
    for j in order:
        mask |= 1 << j
        add(mask)

    while True:
        value, mu = _simplex_max(cost, working, phi_table)
        # Exact certification: subset sums by lowest-set-bit recursion.
        sums = [Fraction(0)] * (1 << k)
        worst, worst_mask = Fraction(0), 0
        for m in range(1, 1 << k):
            low = m & -m
            sums[m] = sums[m ^ low] + mu[low.bit_length() - 1]
            violation = sums[m] - phi_table[m]
            if violation > worst:
                worst, worst_mask = violation, m
        if worst_mask == 0:
            return value if exact else float(value)
        add(worst_mask)


def _simplex_max(cost, masks, phi_table):
    """max cost.mu subject to mu >= 0 and mu(S) <= phi(S) for S in masks.

    Dense tableau, Bland's rule (smallest-index entering and leaving), exact
    Fractions.  The slack basis is feasible because phi >= 0.  Returns
    (optimal value, mu vector).
    """
    k = len(cost)
    m = len(masks)
    width = k + m + 1
    rows = []
    for r, mask in enumerate(masks):
        row = [Fraction(1) if mask >> j & 1 else Fraction(0) for j in range(k)]
        row.extend(Fraction(1) if s == r else Fraction(0) for s in range(m))
        row.append(phi_table[mask])
        rows.append(row)
    # Objective row holds -cost so that a negative entry marks an improving column.
    obj = [-Fraction(c) for c in cost] + [Fraction(0)] * (m + 1)
    basis = [k + r for r in range(m)]

    while True:
        enter = -1
        for j in range(k + m):
            if obj[j] < 0:
                enter = j
                break
        if enter < 0:
            break
        leave, best = -1, None
        for r in range(m):
            a = rows[r][enter]
            if a > 0:
                ratio = rows[r][width - 1] / a
                if best is None or ratio < best or (ratio == best and basis[r] < basis[leave]):
                    best, leave = ratio, r
        if leave < 0:
            # Cannot happen with singleton constraints present: every
            # variable is bounded above by phi of its singleton.
            raise RuntimeError("unbounded hat-norm relaxation")
        _pivot(rows, obj, leave, enter, width)
        basis[leave] = enter

    mu = [Fraction(0)] * k
    for r, b in enumerate(basis):
        if b < k:
            mu[b] = rows[r][width - 1]
    value = Fraction(0)
    for c, v in zip(cost, mu):
        value += c * v
    return value, mu


def _pivot(rows, obj, leave, enter, width):
    piv = rows[leave][enter]
    rows[leave] = [v / piv for v in rows[leave]]
    prow = rows[leave]
    for r, row in enumerate(rows):
        if r != leave and row[enter]:
            f = row[enter]
            rows[r] = [v - f * p for v, p in zip(row, prow)]
    if obj[enter]:
        f = obj[enter]
        for j in range(width):
            obj[j] -= f * prow[j]
