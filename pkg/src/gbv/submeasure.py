"""Non-pathological lower-semicontinuous submeasures on the positive integers.

A submeasure here is a set function phi on finite subsets of {1, 2, ...} with
phi(empty) = 0 that is monotone and subadditive and gives every singleton a
finite value.  Each concrete variant below carries a closed form both for the
set values phi(C) and for the induced sequence norm

    hat(phi)(x) = sup { sum_n mu({n}) |x_n| : mu a measure with mu <= phi },

the supremum running over all measures dominated by phi ("hat-norm").  The
closed forms are cross-checked against an independent linear-programming
oracle over the dominated-measure polytope (see :mod:`gbv.oracle`).

Supported variants
------------------
* weighted sums  phi_A(C) = sum_{n in C} a_n  for nonincreasing positive
  weights A (a measure; Waterman sequences when sum a_n diverges),
* density bounds phi_g(C) = sup_n |C ∩ {1..n}| / g(n) for nondecreasing
  unbounded g with n/g(n) nondecreasing,
* the unit submeasure (1 on every nonempty set),
* counting measure |C|,
* and three wrappers: permutation of the ground set, the dyadic shift
  phi(C) + sum_{n in C} 2^-n (which makes every singleton positive without
  changing which sets have finite or vanishing value), and pointwise max
  with the unit submeasure.

Finite horizons
---------------
Tabulated weights are only defined up to their table length; asking beyond it
raises :class:`~gbv._util.HorizonExceeded`.  Closed forms evaluate at any
index.  Divergence of sum a_n and unboundedness of g are not decidable from
any finite prefix, so they are carried as declared metadata, set
automatically for the shipped closed-form families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from ._util import (
    HorizonExceeded,
    all_exact,
    ceil_power,
    exact_div,
)

EULER_GAMMA = 0.5772156649015328606065121

Number = Union[int, float, Fraction]

# Length above which tabulated float prefix sums switch to asymptotics.
_FLOAT_CACHE_LIMIT = 1 << 17


@dataclass(frozen=True)
class SequencePrefix:
    """The first ``length`` coordinates of a real sequence; tail is zero."""

    entries: tuple

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(self.entries))

    @property
    def length(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)


def as_entries(x) -> tuple:
    """Coerce a SequencePrefix / iterable / ndarray into a tuple of numbers."""
    if isinstance(x, SequencePrefix):
        return x.entries
    if isinstance(x, np.ndarray):
        return tuple(x.tolist())
    return tuple(x)


# ---------------------------------------------------------------------------
# Weight sequences
# ---------------------------------------------------------------------------


class WatermanWeights:
    """A nonincreasing positive weight prefix, optionally with a closed form.

    ``values`` holds the materialized prefix used by the order scanners.  The
    closed-form families (harmonic, power, ones, log-reciprocal) additionally
    support evaluation and partial sums at arbitrary indices, far beyond the
    materialized prefix; partial sums beyond an internal cache switch to
    Euler-Maclaurin asymptotics (float, relative error well under 1e-12 at
    the scales involved).

    ``declared_divergent`` records whether sum a_n is known to diverge.  That
    is a property of the infinite tail, undecidable from the prefix, so it is
    metadata: True for the shipped divergent families, user-supplied (default
    False) for tables.
    """

    __slots__ = ("values", "form", "param", "declared_divergent",
                 "_float_values", "_float_cumsum", "_tail_constant")

    def __init__(self, values, form: str = "table", param=None,
                 declared_divergent: Optional[bool] = None):
        values = tuple(values)
        if not values:
            raise ValueError("weight prefix must be nonempty")
        for i, v in enumerate(values):
            if not v > 0:
                raise ValueError(f"weights must be strictly positive (index {i + 1})")
            if i and values[i] > values[i - 1]:
                raise ValueError(f"weights must be nonincreasing (index {i + 1})")
        self.values = values
        self.form = form
        self.param = param
        if declared_divergent is None:
            declared_divergent = _form_divergent(form, param)
        self.declared_divergent = bool(declared_divergent)
        self._float_values = None
        self._float_cumsum = None
        self._tail_constant = None

    def __len__(self):
        return len(self.values)

    def __repr__(self):
        return (f"WatermanWeights(form={self.form!r}, n={len(self.values)}, "
                f"divergent={self.declared_divergent})")

    @property
    def horizon(self) -> Optional[int]:
        """Largest usable index: None (unbounded) for closed forms."""
        return len(self.values) if self.form == "table" else None

    def value_at(self, n: int):
        """Weight a_n, exact where the form allows, at any index for closed forms."""
        if n < 1:
            raise ValueError("indices are 1-based")
        if n <= len(self.values):
            return self.values[n - 1]
        if self.form == "harmonic":
            return Fraction(1, n)
        if self.form == "ones":
            return 1
        if self.form == "log":
            return Fraction(1, _ceil_log2(n + 1))
        if self.form == "power":
            return float(n) ** (-float(self.param))
        raise HorizonExceeded(f"tabulated weights end at {len(self.values)}, asked for {n}")

    def value_float(self, n: int) -> float:
        return float(self.value_at(n))

    def float_values(self, length: int) -> np.ndarray:
        """First ``length`` weights as a float array (cached)."""
        if self._float_values is None or len(self._float_values) < length:
            k = len(self.values)
            if length <= k:
                arr = np.array([float(v) for v in self.values[:length]], dtype=float)
            elif self.form == "harmonic":
                arr = 1.0 / np.arange(1, length + 1, dtype=float)
            elif self.form == "ones":
                arr = np.ones(length)
            elif self.form == "power":
                arr = np.arange(1, length + 1, dtype=float) ** (-float(self.param))
            elif self.form == "log":
                idx = np.arange(2, length + 2)
                arr = 1.0 / np.maximum(1, np.ceil(np.log2(idx)))
                arr[:k] = [float(v) for v in self.values[:k]]  # exact near the front
            else:
                raise HorizonExceeded(
                    f"tabulated weights end at {k}, asked for {length}")
            self._float_values = arr
        return self._float_values[:length]

    def partial_sum(self, n: int) -> float:
        """Float partial sum a_1 + ... + a_n at any index (asymptotic beyond cache)."""
        if n <= 0:
            return 0.0
        limit = min(_FLOAT_CACHE_LIMIT,
                    len(self.values) if self.form == "table" else _FLOAT_CACHE_LIMIT)
        if n <= limit:
            if self._float_cumsum is None or len(self._float_cumsum) < n:
                grow = min(limit, max(n, 1024))
                self._float_cumsum = np.cumsum(self.float_values(grow))
            return float(self._float_cumsum[n - 1])
        if self.form == "table":
            raise HorizonExceeded(f"tabulated weights end at {len(self.values)}, asked for {n}")
        if self.form == "log":
            return float(self._log_partial_exact(n))
        return self._asymptotic_sum(n)

    def partial_sum_exact(self, n: int):
        """Exact partial sum by direct summation; O(n), small n only."""
        if self.form == "log":
            return self._log_partial_exact(n)
        total = 0
        for i in range(1, n + 1):
            total += self.value_at(i)
        return total

    # -- internals --------------------------------------------------------

    def _log_partial_exact(self, n: int) -> Fraction:
        # a_i is constant 1/k on the dyadic block i in [2^(k-1), 2^k - 1].
        total = Fraction(0)
        k = 1
        while True:
            lo, hi = 1 << (k - 1), (1 << k) - 1
            if lo > n:
                break
            total += Fraction(min(hi, n) - lo + 1, k)
            k += 1
        return total

    def _asymptotic_sum(self, n: int) -> float:
        if self.form in ("harmonic", "power") or self.form == "ones":
            p = 1.0 if self.form == "harmonic" else (0.0 if self.form == "ones" else float(self.param))
        else:  # pragma: no cover - guarded by partial_sum
            raise HorizonExceeded(f"no asymptotic tail for form {self.form!r}")
        if p == 0.0:
            return float(n)
        if p == 1.0:
            return math.log(n) + EULER_GAMMA + 1.0 / (2 * n) - 1.0 / (12 * n * n)
        if self._tail_constant is None:
            k = _FLOAT_CACHE_LIMIT
            exactish = self.partial_sum(k)
            self._tail_constant = exactish - _power_main_terms(k, p)
        return self._tail_constant + _power_main_terms(n, p)


def _power_main_terms(n: int, p: float) -> float:
    n = float(n)
    return n ** (1.0 - p) / (1.0 - p) + 0.5 * n ** (-p) - p * n ** (-p - 1.0) / 12.0


def _form_divergent(form: str, param) -> bool:
    if form in ("harmonic", "ones", "log"):
        return True
    if form == "power":
        return float(param) <= 1.0
    return False


def _ceil_log2(m: int) -> int:
    # smallest k with 2**k >= m, for m >= 1
    return (m - 1).bit_length() if m > 1 else 0


def harmonic_weights(length: int) -> WatermanWeights:
    return WatermanWeights([Fraction(1, i) for i in range(1, length + 1)], form="harmonic")


def ones_weights(length: int) -> WatermanWeights:
    return WatermanWeights([1] * length, form="ones")


def power_weights(p, length: int) -> WatermanWeights:
    p = float(p)
    if p <= 0:
        raise ValueError("power weights need p > 0")
    return WatermanWeights([float(i) ** (-p) for i in range(1, length + 1)],
                           form="power", param=p)


def log_weights(length: int) -> WatermanWeights:
    return WatermanWeights([Fraction(1, max(1, _ceil_log2(i + 1))) for i in range(1, length + 1)],
                           form="log")


def weights_from_values(values, declared_divergent: bool = False) -> WatermanWeights:
    return WatermanWeights(values, form="table", declared_divergent=declared_divergent)


# ---------------------------------------------------------------------------
# Density bounds
# ---------------------------------------------------------------------------


class DensityBound:
    """Integer-valued nondecreasing divisor g for density submeasures.

    Requirements on g: nondecreasing, unbounded, and n/g(n) nondecreasing.
    The last condition is checked exactly for explicit tables.  For the
    ceil-of-closed-form families (g(n) = ceil(n^p) with 0 < p <= 1, and
    g(n) = ceil(log2(n+1))) the underlying real-valued form satisfies it
    (it is concave with value 0 at 0), while the integer rounding may break
    it at isolated indices by less than one unit of resolution; those forms
    are accepted on the strength of the real form, and every consumer that
    needs the ratio condition verifies its conclusions by direct evaluation
    rather than assuming them.
    """

    __slots__ = ("form", "param", "table", "_g_cache")

    def __init__(self, form: str, param=None, table=None):
        if form == "table":
            table = tuple(int(v) for v in table)
            if not table:
                raise ValueError("density table must be nonempty")
            if any(v < 1 for v in table):
                raise ValueError("density table values must be positive integers")
            for i in range(1, len(table)):
                if table[i] < table[i - 1]:
                    raise ValueError(f"density table must be nondecreasing (index {i + 1})")
            if table[-1] <= table[0]:
                raise ValueError("density table must grow: g(N) > g(1) is required "
                                 "as the finite stand-in for unboundedness")
            for n in range(2, len(table) + 1):
                if Fraction(n, table[n - 1]) < Fraction(n - 1, table[n - 2]):
                    raise ValueError(
                        f"n/g(n) must be nondecreasing; fails at n={n} "
                        f"(g({n-1})={table[n-2]}, g({n})={table[n-1]}); "
                        "use the power/log closed forms for rounded profiles")
        elif form == "power":
            param = param if isinstance(param, Fraction) else Fraction(str(param))
            if not (0 < param <= 1):
                raise ValueError("power density bounds need 0 < p <= 1")
        elif form == "log":
            param = None
        else:
            raise ValueError(f"unknown density form {form!r}")
        self.form = form
        self.param = param
        self.table = table
        self._g_cache = None

    def __repr__(self):
        if self.form == "table":
            return f"DensityBound(table, n={len(self.table)})"
        return f"DensityBound({self.form}, param={self.param})"

    @property
    def horizon(self) -> Optional[int]:
        return len(self.table) if self.form == "table" else None

    def g(self, n: int) -> int:
        if n < 1:
            raise ValueError("indices are 1-based")
        if self.form == "table":
            if n > len(self.table):
                raise HorizonExceeded(f"density table ends at {len(self.table)}, asked for {n}")
            return self.table[n - 1]
        if self.form == "power":
            if self.param == 1:
                return n
            if self.param == Fraction(1, 2):
                return math.isqrt(n - 1) + 1
            return ceil_power(n, self.param)
        return max(1, _ceil_log2(n + 1))  # ceil(log2(n+1)), floored at 1

    def g_array(self, length: int) -> np.ndarray:
        """g(1..length) as a float array (cached)."""
        if self._g_cache is None or len(self._g_cache) < length:
            if self.form == "table":
                if length > len(self.table):
                    raise HorizonExceeded(
                        f"density table ends at {len(self.table)}, asked for {length}")
                self._g_cache = np.array(self.table, dtype=float)
            elif self.form == "power" and self.param == Fraction(1, 2):
                n = np.arange(0, length)
                self._g_cache = np.floor(np.sqrt(n.astype(float))).astype(np.int64) + 1
                # float sqrt is exact enough below 2**52 except at perfect squares
                bad = (self._g_cache - 1) ** 2 > n
                self._g_cache[bad] -= 1
                self._g_cache = self._g_cache.astype(float)
            else:
                self._g_cache = np.array([self.g(i) for i in range(1, length + 1)], dtype=float)
        return self._g_cache[:length]

    def real_value(self, n: int) -> float:
        """The underlying real-valued profile (before the ceiling)."""
        if self.form == "power":
            return float(n) ** float(self.param)
        if self.form == "log":
            return math.log2(n + 1)
        return float(self.g(n))

    def real_increment(self, n: int):
        """Increment of the underlying profile at n (g_real(n) - g_real(n-1))."""
        if self.form == "power":
            p = float(self.param)
            if p == 0.5:
                # stable form avoiding cancellation
                return 1.0 / (math.sqrt(n) + math.sqrt(n - 1))
            return float(n) ** p - float(n - 1) ** p
        if self.form == "log":
            return math.log2((n + 1) / n)
        if n == 1:
            return self.table[0]
        return self.table[n - 1] - self.table[n - 2]

    def increments_vanishing(self) -> bool:
        """Whether g(n) - g(n-1) is nonincreasing with limit 0.

        Decided analytically for the closed forms (power needs p < 1), and by
        an exact scan of the table otherwise (a finite table can only ever
        refute the property, so the scan requires the increments to be
        nonincreasing and to reach 0 inside the table).
        """
        if self.form == "power":
            return self.param < 1
        if self.form == "log":
            return True
        incs = [self.table[0]] + [self.table[i] - self.table[i - 1]
                                  for i in range(1, len(self.table))]
        return all(b <= a for a, b in zip(incs, incs[1:])) and incs[-1] == 0


def identity_bound() -> DensityBound:
    return DensityBound("power", 1)


def sqrt_bound() -> DensityBound:
    return DensityBound("power", Fraction(1, 2))


def power_bound(p) -> DensityBound:
    return DensityBound("power", p)


def log_bound() -> DensityBound:
    return DensityBound("log")


def density_from_table(values) -> DensityBound:
    return DensityBound("table", table=values)


# ---------------------------------------------------------------------------
# Submeasures
# ---------------------------------------------------------------------------


class Submeasure:
    """Abstract base: monotone subadditive set function with hat-norm."""

    #: largest index the descriptor can evaluate (None = unbounded)
    horizon: Optional[int] = None

    def set_value(self, C) -> Number:
        raise NotImplementedError

    def hat(self, x) -> Number:
        raise NotImplementedError

    def singleton(self, k: int) -> Number:
        return self.set_value((k,))

    def is_exact(self) -> bool:
        """Whether the closed forms stay in rational arithmetic for rational input."""
        return True

    def _check_indices(self, C):
        C = sorted(set(int(i) for i in C))
        if C and C[0] < 1:
            raise ValueError("set elements must be >= 1")
        if C and self.horizon is not None and C[-1] > self.horizon:
            raise HorizonExceeded(
                f"element {C[-1]} exceeds horizon {self.horizon} of {self!r}")
        return C

    def _check_length(self, n: int):
        if self.horizon is not None and n > self.horizon:
            raise HorizonExceeded(
                f"sequence length {n} exceeds horizon {self.horizon} of {self!r}")

    # Float fast paths used by certificate builders; overridden per variant
    # where an O(n) pass exists.  Results agree with hat() within rounding.

    def truncation_norms(self, x) -> np.ndarray:
        """Array T with T[n-1] = hat of the first n coordinates of x."""
        entries = as_entries(x)
        return np.array([float(self.hat(entries[:n])) for n in range(1, len(entries) + 1)])

    def tail_norms(self, x) -> np.ndarray:
        """Array T with T[n-1] = hat of x with coordinates below n zeroed."""
        entries = as_entries(x)
        out = []
        for n in range(1, len(entries) + 1):
            out.append(float(self.hat((0,) * (n - 1) + entries[n - 1:])))
        return np.array(out)


class SummableSubmeasure(Submeasure):
    """phi_A(C) = sum of weights over C; the hat-norm is the weighted l1 sum."""

    def __init__(self, weights: WatermanWeights):
        self.weights = weights

    @property
    def horizon(self):
        return self.weights.horizon

    def __repr__(self):
        return f"Summable({self.weights!r})"

    def is_exact(self):
        return all_exact(self.weights.values)

    def set_value(self, C):
        C = self._check_indices(C)
        total = 0
        for i in C:
            total += self.weights.value_at(i)
        return total

    def hat(self, x):
        entries = as_entries(x)
        self._check_length(len(entries))
        total = 0
        for i, v in enumerate(entries, start=1):
            if v:
                total += self.weights.value_at(i) * abs(v)
        return total

    def singleton(self, k):
        if self.horizon is not None and k > self.horizon:
            raise HorizonExceeded(f"index {k} exceeds horizon {self.horizon}")
        return self.weights.value_at(k)

    def truncation_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        w = self.weights.float_values(len(ax))
        return np.cumsum(w * ax)

    def tail_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        w = self.weights.float_values(len(ax))
        return np.cumsum((w * ax)[::-1])[::-1]


class DensitySubmeasure(Submeasure):
    """phi_g(C) = sup_n |C ∩ {1..n}| / g(n); hat() is sup_n (prefix sum)/g(n).

    For a finite set or finite sequence the supremum is attained at an index
    no larger than the maximum support point, because g is nondecreasing, so
    the closed forms below are exact finite maxima.

    A caution established by the oracle cross-check: the prefix-sum formula
    is the supremum of sum mu_i |x_i| over the uniform prefix measures
    mu = (1/g(n) on {1..n}) only, which is a *lower* bound for the supremum
    over all dominated measures.  The two agree on characteristic vectors
    for every g (any dominated mu has mu(C) <= phi(C), and the uniform
    prefix measure at the maximizing index attains phi(C)), and agree on
    sequences with nonincreasing absolute values for every shipped profile
    (all of which have g(1) = 1; property verified exhaustively by the test
    suite).  On non-monotone input with later coordinates dominating, the
    polytope supremum can be strictly larger, e.g. g(n) = n with
    x = (7/4, 0, 0, 5): prefix formula 7/4, true supremum 41/16 attained by
    mu = (3/4, 0, 0, 1/4).  Use :func:`gbv.oracle.hat_norm_oracle` when the
    literal dominated-measure value is required.
    """

    def __init__(self, bound: DensityBound):
        self.bound = bound

    @property
    def horizon(self):
        return self.bound.horizon

    def __repr__(self):
        return f"Density({self.bound!r})"

    def set_value(self, C):
        C = self._check_indices(C)
        best = 0
        for rank, n in enumerate(C, start=1):
            val = exact_div(rank, self.bound.g(n))
            if val > best:
                best = val
        return best

    def hat(self, x):
        entries = as_entries(x)
        self._check_length(len(entries))
        best = 0
        prefix = 0
        for n, v in enumerate(entries, start=1):
            prefix = prefix + abs(v)
            val = exact_div(prefix, self.bound.g(n))
            if val > best:
                best = val
        return best

    def singleton(self, k):
        if self.horizon is not None and k > self.horizon:
            raise HorizonExceeded(f"index {k} exceeds horizon {self.horizon}")
        return exact_div(1, self.bound.g(k))

    def truncation_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        g = self.bound.g_array(len(ax))
        return np.maximum.accumulate(np.cumsum(ax) / g)

    def tail_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        n = len(ax)
        if n == 0:
            return np.empty(0)
        g = self.bound.g_array(n)
        prefix = np.cumsum(ax)
        out = np.empty(n)
        out[0] = (prefix / g).max()
        # tail at cut n: max_{m >= n} (prefix[m] - prefix[n-2]) / g[m]
        for cut in range(2, n + 1):
            out[cut - 1] = ((prefix[cut - 1:] - prefix[cut - 2]) / g[cut - 1:]).max()
        return out


class UnitSubmeasure(Submeasure):
    """1 on every nonempty set; the hat-norm is the sup norm."""

    def __repr__(self):
        return "Unit()"

    def set_value(self, C):
        C = self._check_indices(C)
        return 1 if C else 0

    def hat(self, x):
        entries = as_entries(x)
        return max((abs(v) for v in entries), default=0)

    def singleton(self, k):
        return 1

    def truncation_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        return np.maximum.accumulate(ax)

    def tail_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        return np.maximum.accumulate(ax[::-1])[::-1]


class CountingSubmeasure(Submeasure):
    """phi(C) = |C|; the hat-norm is the l1 sum."""

    def __repr__(self):
        return "Counting()"

    def set_value(self, C):
        return len(self._check_indices(C))

    def hat(self, x):
        entries = as_entries(x)
        total = 0
        for v in entries:
            total += abs(v)
        return total

    def singleton(self, k):
        return 1

    def truncation_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        return np.cumsum(ax)

    def tail_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        return np.cumsum(ax[::-1])[::-1]


class PermutedSubmeasure(Submeasure):
    """psi(C) = phi(pi[C]) for a bijection pi of {1..N}.

    The hat-norm satisfies psi-hat(x) = phi-hat(y) where y places x_i at
    position pi(i): a measure mu is dominated by psi exactly when its
    push-forward along pi is dominated by phi, and the push-forward leaves
    the weighted sum unchanged.
    """

    def __init__(self, base: Submeasure, perm: Sequence[int]):
        perm = tuple(int(p) for p in perm)
        n = len(perm)
        if sorted(perm) != list(range(1, n + 1)):
            raise ValueError("perm must be a bijection of {1..N} given as the list of images")
        if base.horizon is not None and n > base.horizon:
            raise HorizonExceeded("permutation range exceeds the base horizon")
        self.base = base
        self.perm = perm

    @property
    def horizon(self):
        return len(self.perm)

    def __repr__(self):
        return f"Permuted({self.base!r}, n={len(self.perm)})"

    def is_exact(self):
        return self.base.is_exact()

    def set_value(self, C):
        C = self._check_indices(C)
        return self.base.set_value(tuple(self.perm[i - 1] for i in C))

    def hat(self, x):
        entries = as_entries(x)
        self._check_length(len(entries))
        if not entries:
            return 0
        top = max(self.perm[i] for i in range(len(entries)))
        y = [0] * top
        for i, v in enumerate(entries):
            y[self.perm[i] - 1] = v
        return self.base.hat(y)

    def singleton(self, k):
        if k > len(self.perm):
            raise HorizonExceeded(f"index {k} exceeds horizon {len(self.perm)}")
        return self.base.singleton(self.perm[k - 1])


class ShiftedSubmeasure(Submeasure):
    """phi'(C) = phi(C) + sum_{n in C} 2^-n.

    The added part is a measure, so the hat-norm splits:
    hat(phi')(x) = hat(phi)(x) + sum_n 2^-n |x_n|.  (Any mu' <= phi + sigma
    decomposes as the positive part of mu' - sigma, which is <= phi, plus a
    part <= sigma.)  Every singleton becomes positive, while set values move
    by less than 1, so finiteness and tail-vanishing of phi are unchanged.
    """

    def __init__(self, base: Submeasure):
        self.base = base

    @property
    def horizon(self):
        return self.base.horizon

    def __repr__(self):
        return f"Shifted({self.base!r})"

    def is_exact(self):
        return self.base.is_exact()

    def set_value(self, C):
        C = self._check_indices(C)
        extra = Fraction(0)
        for i in C:
            extra += Fraction(1, 2 ** i)
        return self.base.set_value(C) + extra

    def hat(self, x):
        entries = as_entries(x)
        self._check_length(len(entries))
        extra = 0
        for i, v in enumerate(entries, start=1):
            if v:
                extra += Fraction(1, 2 ** i) * abs(v)
        return self.base.hat(entries) + extra

    def singleton(self, k):
        return self.base.singleton(k) + Fraction(1, 2 ** k)

    def truncation_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        dyadic = np.ldexp(1.0, -np.arange(1, len(ax) + 1))
        return self.base.truncation_norms(x) + np.cumsum(dyadic * ax)

    def tail_norms(self, x):
        ax = np.abs(np.asarray(as_float_array(x)))
        dyadic = np.ldexp(1.0, -np.arange(1, len(ax) + 1))
        return self.base.tail_norms(x) + np.cumsum((dyadic * ax)[::-1])[::-1]


class MaxWithUnitSubmeasure(Submeasure):
    """psi(C) = max(phi(C), 1) on nonempty sets.

    Set values differ from the base by at most 1 and every singleton is at
    least 1.  No closed form is claimed for the hat-norm of a pointwise max
    (it need not equal the max of the hat-norms), so hat() defers to the
    exact polytope oracle and inherits its size cap.
    """

    def __init__(self, base: Submeasure):
        self.base = base

    @property
    def horizon(self):
        return self.base.horizon

    def __repr__(self):
        return f"MaxWithUnit({self.base!r})"

    def is_exact(self):
        return self.base.is_exact()

    def set_value(self, C):
        C = self._check_indices(C)
        if not C:
            return 0
        base = self.base.set_value(C)
        return base if base > 1 else 1

    def hat(self, x):
        from .oracle import hat_norm_oracle  # local import: oracle depends on this module

        return hat_norm_oracle(self, x)

    def singleton(self, k):
        base = self.base.singleton(k)
        return base if base > 1 else 1


def as_float_array(x) -> np.ndarray:
    entries = x if isinstance(x, np.ndarray) else np.array(
        [float(v) for v in as_entries(x)], dtype=float)
    return entries.astype(float, copy=False)


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------


def eval_set(phi: Submeasure, C) -> Number:
    """Value phi(C) of the submeasure on a finite set of positive integers."""
    return phi.set_value(C)


def hat_norm(phi: Submeasure, x) -> Number:
    """Closed-form hat-norm of a finite sequence prefix (tail read as zero).

    Exact (int/Fraction) whenever the descriptor and the entries are exact;
    float otherwise.  For the max-with-unit wrapper no closed form exists and
    the call is routed through the polytope oracle, whose size cap applies.
    """
    return phi.hat(x)


def tail_norm(phi: Submeasure, x, n: int) -> Number:
    """Hat-norm of x with coordinates 1..n-1 zeroed; nonincreasing in n."""
    entries = as_entries(x)
    if not 1 <= n <= len(entries):
        raise ValueError(f"cut index {n} out of range 1..{len(entries)}")
    return phi.hat((0,) * (n - 1) + entries[n - 1:])


def shift_normalize(phi: Submeasure) -> ShiftedSubmeasure:
    """Add the dyadic measure so that every singleton has positive value."""
    return ShiftedSubmeasure(phi)


def max_with_unit(phi: Submeasure) -> MaxWithUnitSubmeasure:
    """Pointwise max with the unit submeasure; singletons no longer vanish."""
    return MaxWithUnitSubmeasure(phi)


def summable(weights) -> SummableSubmeasure:
    if not isinstance(weights, WatermanWeights):
        weights = WatermanWeights(weights)
    return SummableSubmeasure(weights)


def density(bound) -> DensitySubmeasure:
    if not isinstance(bound, DensityBound):
        bound = DensityBound("table", table=bound)
    return DensitySubmeasure(bound)


def unit() -> UnitSubmeasure:
    return UnitSubmeasure()


def counting() -> CountingSubmeasure:
    return CountingSubmeasure()


def permuted(phi: Submeasure, perm) -> PermutedSubmeasure:
    return PermutedSubmeasure(phi, perm)
