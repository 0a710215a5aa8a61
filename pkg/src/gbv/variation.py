"""Variation functionals of piecewise-linear functions on the unit interval.

The function model is deliberately piecewise linear: every supremum over
families of nonoverlapping closed subintervals is then attained with all
endpoints at breakpoints (an interior endpoint can always be slid to the
neighbouring breakpoint that does not decrease any oscillation), which makes
exhaustive enumeration an exact oracle instead of an estimate.  Only finitely
many intervals of a family can contribute (at most one nondegenerate interval
per linear segment matters), so finite families of at most B intervals are
lossless, and the degenerate intervals that the interval-family model allows
contribute zero oscillation and never help.

Provided functionals, for a submeasure phi with hat-norm ``hat``:

* ``jordan_variation``        -- classical total variation,
* ``modulus_of_variation``    -- v(n) = max total oscillation over n
                                 nonoverlapping intervals (exact DP),
* ``variation_bruteforce``    -- sup over all ordered interval families of
                                 hat(oscillation vector): the exact general
                                 variation for every variant with a known
                                 optimal ordering,
* ``variation_greedy``        -- hat of the sorted monotone-run oscillations:
                                 a fast lower bound, exact precisely when the
                                 top-k runs attain the k-interval modulus for
                                 every k (see ``runs_saturate_modulus``),
* ``variation_upper_bound``   -- hat of the modulus increment vector: an
                                 upper bound for prefix-monotone hat-norms,
* ``bv_norm`` / ``abv_norm``  -- |f(0)| plus the variation.

Greedy is *not* exact in general, even for weighted-sum submeasures: merging
runs can produce a single oscillation larger than any run (values 0,4,1,5
give runs (4,3,4) but the full interval oscillates by 5), and with fast
decaying weights the merged family wins.  The brute-force oracle arbitrates.
"""

from __future__ import annotations

import warnings
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ._util import SizeRefusal, all_exact, exact_div
from .submeasure import (
    CountingSubmeasure,
    DensitySubmeasure,
    PermutedSubmeasure,
    ShiftedSubmeasure,
    Submeasure,
    SummableSubmeasure,
    UnitSubmeasure,
    WatermanWeights,
    hat_norm,
    summable,
)

BRUTE_FORCE_MAX_SEGMENTS = 12

_FLOAT_SLACK = 1e-9


@dataclass(frozen=True)
class PiecewiseLinearFunction:
    """Breakpoints 0 = t_0 < t_1 < ... < t_B = 1 and values y_0 .. y_B."""

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(self.breakpoints))
        object.__setattr__(self, "values", tuple(self.values))
        t, y = self.breakpoints, self.values
        if len(t) != len(y):
            raise ValueError("breakpoints and values must have equal length")
        if len(t) < 2:
            raise ValueError("need at least the two endpoints of [0, 1]")
        if t[0] != 0 or t[-1] != 1:
            raise ValueError("breakpoints must start at 0 and end at 1")
        for i in range(1, len(t)):
            if not t[i] > t[i - 1]:
                raise ValueError(f"breakpoints must be strictly increasing (index {i})")

    @property
    def segments(self) -> int:
        return len(self.breakpoints) - 1

    def is_exact(self) -> bool:
        return all_exact(self.breakpoints) and all_exact(self.values)

    def __call__(self, t):
        bp, y = self.breakpoints, self.values
        if t < 0 or t > 1:
            raise ValueError(f"argument {t} outside [0, 1]")
        i = bisect_right(bp, t) - 1
        if i >= len(bp) - 1:
            return y[-1]
        frac = exact_div(t - bp[i], bp[i + 1] - bp[i])
        return y[i] + (y[i + 1] - y[i]) * frac


@dataclass(frozen=True)
class IntervalFamily:
    """An ordered list of nonoverlapping closed subintervals of [0, 1].

    Interiors are disjoint but endpoints may touch; degenerate one-point
    intervals are allowed.
    """

    intervals: tuple

    def __post_init__(self):
        ivs = tuple((s, t) for s, t in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        prev_end = 0
        for j, (s, t) in enumerate(ivs):
            if s < 0 or t > 1:
                raise ValueError(f"interval {j} leaves [0, 1]")
            if t < s:
                raise ValueError(f"interval {j} has negative length")
            if s < prev_end:
                raise ValueError(f"interval {j} overlaps its predecessor")
            prev_end = t

    def __len__(self):
        return len(self.intervals)

    def oscillations(self, f: PiecewiseLinearFunction) -> tuple:
        return tuple(oscillation(f, iv) for iv in self.intervals)


@dataclass(frozen=True)
class ModulusVector:
    """v[n] = largest total oscillation achievable with n intervals.

    Always starts at v[0] = 0, is nondecreasing, and has nonincreasing
    increments (concavity); validated on construction, exactly for exact
    inputs and within float slack otherwise.
    """

    values: tuple

    def __post_init__(self):
        v = tuple(self.values)
        object.__setattr__(self, "values", v)
        if not v or v[0] != 0:
            raise ValueError("modulus vector must start at v[0] = 0")
        slack = 0 if all_exact(v) else _FLOAT_SLACK * max(1.0, float(max(v)))
        for n in range(1, len(v)):
            if v[n] < v[n - 1] - slack:
                raise ValueError(f"modulus must be nondecreasing (n={n})")
        for n in range(2, len(v)):
            if v[n] - v[n - 1] > v[n - 1] - v[n - 2] + slack:
                raise ValueError(f"modulus increments must be nonincreasing (n={n})")

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    def increments(self) -> tuple:
        return tuple(self.values[n] - self.values[n - 1] for n in range(1, len(self.values)))


# ---------------------------------------------------------------------------
# Elementary functionals
# ---------------------------------------------------------------------------


def oscillation(f: PiecewiseLinearFunction, interval) -> object:
    """|f(t) - f(s)| over a closed subinterval [s, t] of [0, 1]."""
    s, t = interval
    if t < s:
        raise ValueError("interval endpoints out of order")
    return abs(f(t) - f(s))


def monotone_runs(f: PiecewiseLinearFunction) -> tuple:
    """Oscillations of the maximal monotone pieces, split at local extrema.

    Zero-slope segments extend the current run.  The run total equals the
    Jordan variation.  A constant function has no runs.
    """
    runs = []
    current = 0
    sign = 0
    for i in range(f.segments):
        d = f.values[i + 1] - f.values[i]
        if d == 0:
            continue
        s = 1 if d > 0 else -1
        if s == sign:
            current += d
        else:
            if sign != 0:
                runs.append(abs(current))
            current, sign = d, s
    if sign != 0:
        runs.append(abs(current))
    return tuple(runs)


def jordan_variation(f: PiecewiseLinearFunction):
    """Classical total variation: the sum of the monotone-run oscillations."""
    total = 0
    for i in range(f.segments):
        total += abs(f.values[i + 1] - f.values[i])
    return total


# ---------------------------------------------------------------------------
# Modulus of variation
# ---------------------------------------------------------------------------


def modulus_of_variation(f: PiecewiseLinearFunction, n_max: int = None) -> ModulusVector:
    """Exact modulus vector by dynamic programming over breakpoint indices.

    State per breakpoint: best total with j complete intervals (A), and best
    total with j complete intervals plus one open interval maximizing a later
    upward (U) or downward (D) close.  Intervals may share endpoints, so an
    interval may open at the index where the previous one closed.
    """
    B = f.segments
    if n_max is None:
        n_max = B
    if not 0 <= n_max <= B:
        raise ValueError(f"n_max must lie in 0..{B}")
    y = f.values
    A = [0] * (n_max + 1)
    U = [None] * (n_max + 1)
    D = [None] * (n_max + 1)
    for i in range(B + 1):
        yi = y[i]
        for j in range(n_max + 1):
            if j:
                close_up = U[j - 1] + yi
                close_down = D[j - 1] - yi
                if close_up > A[j]:
                    A[j] = close_up
                if close_down > A[j]:
                    A[j] = close_down
            open_up = A[j] - yi
            open_down = A[j] + yi
            if U[j] is None or open_up > U[j]:
                U[j] = open_up
            if D[j] is None or open_down > D[j]:
                D[j] = open_down
    return ModulusVector(tuple(A))


def modulus_by_enumeration(f: PiecewiseLinearFunction, n_max: int = None) -> ModulusVector:
    """Brute-force modulus: exhaustive over breakpoint interval families."""
    B = f.segments
    if B > BRUTE_FORCE_MAX_SEGMENTS:
        raise SizeRefusal(f"enumeration limited to {BRUTE_FORCE_MAX_SEGMENTS} segments")
    if n_max is None:
        n_max = B
    best = [0] * (n_max + 1)
    for fam in _index_families(B + 1, n_max):
        total = 0
        for (i, j) in fam:
            total += abs(f.values[j] - f.values[i])
        k = len(fam)
        if total > best[k]:
            best[k] = total
    for k in range(1, n_max + 1):
        if best[k] < best[k - 1]:
            best[k] = best[k - 1]
    return ModulusVector(tuple(best))


@lru_cache(maxsize=128)
def _index_families(num_points: int, max_count: int) -> tuple:
    """All families of nondegenerate index intervals (i, j), i < j, with
    interiors disjoint (touching endpoints allowed), up to max_count many."""
    out = []

    def extend(start, chosen):
        if chosen:
            out.append(tuple(chosen))
        if len(chosen) == max_count:
            return
        for i in range(start, num_points - 1):
            for j in range(i + 1, num_points):
                chosen.append((i, j))
                extend(j, chosen)
                chosen.pop()

    extend(0, [])
    return tuple(out)


@lru_cache(maxsize=64)
def _oscillation_profiles(breakpoints: tuple, values: tuple, max_count: int) -> tuple:
    """Per family: oscillation vector in left-to-right and sorted order,
    zero oscillations stripped (a family with zeros removed is also
    enumerated, so stripping loses nothing)."""
    num_points = len(values)
    profiles = []
    for fam in _index_families(num_points, max_count):
        ltr = tuple(v for v in (abs(values[j] - values[i]) for i, j in fam) if v != 0)
        if not ltr:
            continue
        profiles.append((ltr, tuple(sorted(ltr, reverse=True))))
    return tuple(profiles)


# ---------------------------------------------------------------------------
# General variation
# ---------------------------------------------------------------------------


def _ordering_certain(phi: Submeasure) -> bool:
    """True when hat of the sorted-descending vector is the exact supremum of
    hat over all orderings: weighted sums and the shifted wrapper by the
    rearrangement inequality, density bounds by prefix-sum domination, unit
    and counting because they ignore order."""
    while isinstance(phi, (ShiftedSubmeasure, PermutedSubmeasure)):
        phi = phi.base
    return isinstance(phi, (SummableSubmeasure, DensitySubmeasure,
                            UnitSubmeasure, CountingSubmeasure))


def _best_order_hat(phi: Submeasure, ltr: tuple, srt: tuple):
    """Supremum of hat over orderings of one family's oscillations.

    A permutation wrapper ranges over the same orderings as its base, so the
    supremum passes through.  Where no ordering rule is known (max-with-unit)
    the max of the left-to-right and sorted evaluations is used: a lower
    bound, consistent with that variant's no-closed-form stance.
    """
    if isinstance(phi, PermutedSubmeasure):
        return _best_order_hat(phi.base, ltr, srt)
    if _ordering_certain(phi):
        return phi.hat(srt)
    a, b = phi.hat(ltr), phi.hat(srt)
    return a if a > b else b


def variation_bruteforce(f: PiecewiseLinearFunction, phi: Submeasure,
                         max_count: int = None):
    """Exact supremum of hat(oscillation vector) over ordered interval families.

    Endpoints are restricted to breakpoints (lossless for piecewise-linear f)
    and enumeration is exhaustive, so for every variant with a known optimal
    ordering this is the exact general variation; it is the oracle that the
    greedy and upper-bound estimators are judged against.  Rational inputs
    are evaluated in exact arithmetic; float inputs go through a vectorized
    pass over the same family enumeration.
    """
    B = f.segments
    if B > BRUTE_FORCE_MAX_SEGMENTS:
        raise SizeRefusal(
            f"brute force limited to {BRUTE_FORCE_MAX_SEGMENTS} segments (got {B})")
    if max_count is None:
        max_count = B
    if not 1 <= max_count <= B:
        raise ValueError(f"max_count must lie in 1..{B}")
    if phi.horizon is not None:
        max_count = min(max_count, phi.horizon)
    if not (f.is_exact() and phi.is_exact()):
        fast = _bruteforce_vectorized(f, phi, max_count)
        if fast is not None:
            return fast
    best = 0
    for ltr, srt in _oscillation_profiles(f.breakpoints, f.values, max_count):
        val = _best_order_hat(phi, ltr, srt)
        if val > best:
            best = val
    return best


def _bruteforce_vectorized(f: PiecewiseLinearFunction, phi: Submeasure, max_count: int):
    M = _sorted_profile_matrix(f.breakpoints, f.values, max_count)
    if M.size == 0:
        return 0.0
    rows = _rowwise_sorted_hat(phi, M)
    return float(rows.max()) if rows is not None else None


@lru_cache(maxsize=64)
def _sorted_profile_matrix(breakpoints: tuple, values: tuple, max_count: int) -> np.ndarray:
    profiles = _oscillation_profiles(breakpoints, values, max_count)
    width = max((len(s) for _, s in profiles), default=0)
    M = np.zeros((len(profiles), width))
    for r, (_, srt) in enumerate(profiles):
        M[r, :len(srt)] = [float(v) for v in srt]
    return M


def _rowwise_sorted_hat(phi: Submeasure, M: np.ndarray):
    """Hat of each row's sorted oscillation vector, or None if no vectorized
    form exists for the variant (the caller then falls back to the exact
    per-family path)."""
    if isinstance(phi, PermutedSubmeasure):
        return _rowwise_sorted_hat(phi.base, M)   # ordered-sup passes through
    if isinstance(phi, SummableSubmeasure):
        return M @ phi.weights.float_values(M.shape[1])
    if isinstance(phi, DensitySubmeasure):
        g = phi.bound.g_array(M.shape[1])
        return (np.cumsum(M, axis=1) / g).max(axis=1)
    if isinstance(phi, UnitSubmeasure):
        return M[:, 0]
    if isinstance(phi, CountingSubmeasure):
        return M.sum(axis=1)
    if isinstance(phi, ShiftedSubmeasure):
        base = _rowwise_sorted_hat(phi.base, M)
        if base is None:
            return None
        dyadic = np.ldexp(1.0, -np.arange(1, M.shape[1] + 1))
        return base + M @ dyadic
    return None


def _greedy_guarantee(phi: Submeasure) -> bool:
    # Prefix-sum domination implies hat-domination for these variants
    # (counting is the all-ones weighted sum).
    while isinstance(phi, ShiftedSubmeasure):
        phi = phi.base
    return isinstance(phi, (SummableSubmeasure, DensitySubmeasure, CountingSubmeasure))


def variation_greedy(f: PiecewiseLinearFunction, phi: Submeasure):
    """Hat-norm of the sorted monotone-run oscillations.

    A lower bound of the true variation; exact exactly when the k largest
    runs attain the k-interval modulus for every k (``runs_saturate_modulus``)
    and phi has the prefix-monotone guarantee (weighted sums, density bounds,
    their shifted wrappers).  For other variants a warning flags that not
    even the lower-bound ordering argument is available.
    """
    if not _greedy_guarantee(phi):
        warnings.warn(
            f"greedy variation has no ordering guarantee for {phi!r}; "
            "value is a heuristic", stacklevel=2)
    runs = sorted(monotone_runs(f), reverse=True)
    return hat_norm(phi, runs)


def variation_upper_bound(f: PiecewiseLinearFunction, phi: Submeasure):
    """Hat-norm of the modulus increment vector.

    The sorted oscillations of any family are prefix-dominated by the modulus
    increments (their k-prefix sums are at most v(k) by definition), so for
    prefix-monotone hat-norms this dominates the brute-force supremum.  For
    unit and counting it degenerates to v(1) and v(B), both exact.
    """
    if not _greedy_guarantee(phi) and not isinstance(phi, (UnitSubmeasure, CountingSubmeasure)):
        warnings.warn(
            f"upper bound has no domination guarantee for {phi!r}", stacklevel=2)
    d = modulus_of_variation(f).increments()
    return hat_norm(phi, d)


def runs_saturate_modulus(f: PiecewiseLinearFunction) -> bool:
    """Whether the k largest monotone runs attain v(k) for every k.

    On this class (which contains every alternating profile with
    nonincreasing amplitudes) greedy, brute force and the upper bound
    coincide for prefix-monotone hat-norms, since
    greedy <= brute <= upper = hat(sorted runs) = greedy.
    """
    v = modulus_of_variation(f)
    runs = sorted(monotone_runs(f), reverse=True)
    slack = 0 if (f.is_exact()) else _FLOAT_SLACK * max(1.0, float(v.values[-1]))
    total = 0
    for k in range(1, len(v)):
        if k <= len(runs):
            total += runs[k - 1]
        if abs(v[k] - total) > slack:
            return False
    return True


# ---------------------------------------------------------------------------
# Norms
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BVNormResult:
    value: object
    variation: object
    method: str       # "brute" or "greedy"
    exact: bool       # method provably attains the supremum for this input


def bv_norm_detail(f: PiecewiseLinearFunction, phi: Submeasure,
                   method: str = "auto") -> BVNormResult:
    if method == "auto":
        method = "brute" if f.segments <= BRUTE_FORCE_MAX_SEGMENTS else "greedy"
    if method == "brute":
        var = variation_bruteforce(f, phi)
        exact = _ordering_certain(phi)
    elif method == "greedy":
        var = variation_greedy(f, phi)
        exact = _greedy_guarantee(phi) and runs_saturate_modulus(f)
    else:
        raise ValueError(f"unknown method {method!r}")
    return BVNormResult(abs(f.values[0]) + var, var, method, exact)


def bv_norm(f: PiecewiseLinearFunction, phi: Submeasure, method: str = "auto"):
    """|f(0)| + variation of f under phi (brute force up to 12 segments)."""
    return bv_norm_detail(f, phi, method).value


def abv_norm(f: PiecewiseLinearFunction, weights):
    """|f(0)| + weighted variation: bv_norm under the weighted-sum submeasure."""
    if not isinstance(weights, WatermanWeights):
        weights = WatermanWeights(weights)
    return bv_norm(f, summable(weights))


# ---------------------------------------------------------------------------
# Construction helpers
# ---------------------------------------------------------------------------


def pl_from_points(points) -> PiecewiseLinearFunction:
    pts = sorted(points, key=lambda p: p[0])
    return PiecewiseLinearFunction(tuple(p[0] for p in pts), tuple(p[1] for p in pts))


def tent() -> PiecewiseLinearFunction:
    return PiecewiseLinearFunction((0, Fraction(1, 2), 1), (0, 1, 0))


def pl_scale(f: PiecewiseLinearFunction, c) -> PiecewiseLinearFunction:
    return PiecewiseLinearFunction(f.breakpoints, tuple(c * v for v in f.values))


def pl_shift(f: PiecewiseLinearFunction, c) -> PiecewiseLinearFunction:
    return PiecewiseLinearFunction(f.breakpoints, tuple(v + c for v in f.values))


def pl_add(f: PiecewiseLinearFunction, g: PiecewiseLinearFunction) -> PiecewiseLinearFunction:
    grid = sorted(set(f.breakpoints) | set(g.breakpoints))
    return PiecewiseLinearFunction(tuple(grid), tuple(f(t) + g(t) for t in grid))
