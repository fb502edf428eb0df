"""Closed-form probabilities, bounds, and geometric measures.

Analytic ground truth for the simulator: binomial comparisons, fair
+/-1 random-walk endpoint laws, lens-region measures of intersecting
disks on the torus, and the assembled segregation bounds.

Arithmetic runs in two modes. Passing probabilities as
fractions.Fraction gives exact rational results; float inputs use
numerically stable floating point (documented relative tolerance
1e-12). Random-walk operations are always exact rationals.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

import numpy as np
from scipy.stats import binom as _scipy_binom

Prob = Union[float, Fraction]

RW_CAPACITY = 4000  # max a + b for exact random-walk comparisons

THEOREM1_BOUND_CAVEAT = (
    "asymptotic correction factor (1 - o(1)) omitted; treat as a large-n "
    "reference line, not a finite-n guarantee"
)

__all__ = [
    "DiscreteDistribution",
    "RegionMeasures",
    "binom_pmf",
    "binom_distribution",
    "binomial_mode",
    "binom_ge_prob",
    "binom_collision_upper_bound",
    "prob_gt_one_and_bound",
    "rw_abs_compare",
    "rw_lower_bound",
    "region_measures",
    "edge_within_tau_fraction",
    "theorem1_bound",
    "er_common_empty_probability",
    "RW_CAPACITY",
    "THEOREM1_BOUND_CAVEAT",
]


# ===================================================================
# DISCRETE DISTRIBUTIONS
# ===================================================================


@dataclass(frozen=True)
class DiscreteDistribution:
    """Distribution on consecutive integers offset, offset+1, ...

    Weights are nonnegative and sum to one: exactly when rational, within
    1e-12 when floating point.
    """

    offset: int
    weights: tuple

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ValueError("weights must be nonnegative")
        total = sum(self.weights)
        if isinstance(total, Fraction):
            if total != 1:
                raise ValueError(f"weights sum to {total}, expected 1")
        elif abs(total - 1.0) > 1e-12:
            raise ValueError(f"weights sum to {total!r}, expected 1 within 1e-12")

    @property
    def support(self) -> range:
        return range(self.offset, self.offset + len(self.weights))

    def pmf(self, k: int):
        i = k - self.offset
        if 0 <= i < len(self.weights):
            return self.weights[i]
        return Fraction(0) if self._exact else 0.0

    @property
    def _exact(self) -> bool:
        return bool(self.weights) and isinstance(self.weights[0], Fraction)


def _check_prob(p: Prob, name: str = "p") -> None:
    if not 0 <= p <= 1:
        raise ValueError(f"{name} must be in [0, 1], got {p}")


def _pmf_vector(n: int, p: Prob) -> Sequence:
    """Bin(n, p) pmf over k = 0..n; exact list for Fraction p, ndarray else."""
    if isinstance(p, Fraction):
        q = 1 - p
        return [math.comb(n, k) * p**k * q ** (n - k) for k in range(n + 1)]
    return _scipy_binom.pmf(np.arange(n + 1), n, p)


# ===================================================================
# BINOMIAL OPERATIONS
# ===================================================================


def binom_pmf(n: int, p: Prob, k: int) -> Prob:
    """P(X = k) for X ~ Bin(n, p). Exact when p is a Fraction."""
    if not 0 <= k <= n:
        raise ValueError(f"k must be in [0, {n}], got {k}")
    _check_prob(p)
    if isinstance(p, Fraction):
        return math.comb(n, k) * p**k * (1 - p) ** (n - k)
    return float(_scipy_binom.pmf(k, n, p))


def binom_distribution(n: int, p: Prob) -> DiscreteDistribution:
    """The full Bin(n, p) law as a DiscreteDistribution."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    _check_prob(p)
    weights = _pmf_vector(n, p)
    if isinstance(p, Fraction):
        return DiscreteDistribution(0, tuple(weights))
    # normalize away the ~1e-16 float summation slack
    arr = np.asarray(weights, dtype=float)
    return DiscreteDistribution(0, tuple(arr / arr.sum()))


def binomial_mode(n: int, p: Prob) -> int:
    """Index floor(p*(n+1)), at which Bin(n, p) attains its maximum.

    Requires p < 1. When p*(n+1) is an integer m, positions m-1 and m tie
    and m is returned.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0 <= p < 1:
        raise ValueError(f"p must be in [0, 1), got {p}")
    return math.floor(p * (n + 1))


def binom_ge_prob(n: int, p: Prob, q: Prob) -> tuple[Prob, Prob, Prob]:
    """(P(X>=Y), P(X>Y), P(X=Y)) for independent X ~ Bin(n,p), Y ~ Bin(n,q).

    Exact convolution over the two pmfs; exact rationals when both p and q
    are Fractions. For p >= q the first output is at least 1/2.
    """
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    _check_prob(p, "p")
    _check_prob(q, "q")
    exact = isinstance(p, Fraction) and isinstance(q, Fraction)
    px = _pmf_vector(n, p if exact else float(p))
    py = _pmf_vector(n, q if exact else float(q))
    if exact:
        eq = sum(a * b for a, b in zip(px, py))
        cum = Fraction(0)
        gt = Fraction(0)
        for k in range(1, n + 1):
            cum += py[k - 1]  # P(Y <= k-1) = P(Y < k)
            gt += px[k] * cum
        return eq + gt, gt, eq
    px = np.asarray(px)
    py = np.asarray(py)
    eq = float(px @ py)
    gt = float(px[1:] @ np.cumsum(py)[:-1])
    return eq + gt, gt, eq


def binom_collision_upper_bound(n: int, p: Prob) -> float:
    """Upper bound 1 / (sqrt(2*pi*d) * (1 - d/n)^d) on max_k P(X = k),
    with d = floor(p*(n+1)). Valid (and accepted) only for 2 <= d < n."""
    d = binomial_mode(n, p)
    if not 2 <= d < n:
        raise ValueError(f"bound requires 2 <= floor(p*(n+1)) < n, got d={d}, n={n}")
    return 1.0 / (math.sqrt(2.0 * math.pi * d) * (1.0 - d / n) ** d)


def prob_gt_one_and_bound(n: int, p: Prob) -> tuple[float, float]:
    """(exact P(X > 1), closed-form lower bound) for X ~ Bin(n, p).

    exact = 1 - (1-p)^n - n*p*(1-p)^(n-1);
    bound = 1 - e^(-c) * (1 + c*e^(c/n)) with c = p*n. exact >= bound.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    _check_prob(p)
    p = float(p)
    exact = 1.0 - (1.0 - p) ** n - n * p * (1.0 - p) ** (n - 1)
    c = p * n
    bound = 1.0 - math.exp(-c) * (1.0 + c * math.exp(c / n))
    return exact, bound


# ===================================================================
# FAIR +/-1 RANDOM WALKS
# ===================================================================


def _folded_endpoint_counts(k: int) -> tuple[list[int], list[int]]:
    """Law of |position| after k fair +/-1 steps, as integer counts over 2^k.

    Values run k mod 2, k mod 2 + 2, ..., k. Value 0 (k even) has count
    C(k, k/2); value m > 0 collects the two signed endpoints, 2*C(k, (k-m)/2).
    """
    values, counts = [], []
    for m in range(k % 2, k + 1, 2):
        c = math.comb(k, (k - m) // 2)
        values.append(m)
        counts.append(c if m == 0 else 2 * c)
    return values, counts


def rw_abs_compare(a: int, b: int) -> tuple[Fraction, Fraction, Fraction]:
    """(P(|A|<|B|), P(|A|=|B|), P(|A|>|B|)) for independent fair +/-1 walks
    A of length a and B of length b. Exact rationals from the folded
    endpoint laws."""
    if a < 0 or b < 0:
        raise ValueError(f"walk lengths must be >= 0, got a={a}, b={b}")
    if a + b > RW_CAPACITY:
        raise ValueError(f"a + b = {a + b} exceeds exact capacity {RW_CAPACITY}")
    va, ca = _folded_endpoint_counts(a)
    vb, cb = _folded_endpoint_counts(b)
    suffix_b = _suffix_sums(cb)
    suffix_a = _suffix_sums(ca)

    less = sum(c * suffix_b[bisect_right(vb, v)] for v, c in zip(va, ca))
    greater = sum(c * suffix_a[bisect_right(va, v)] for v, c in zip(vb, cb))
    bv = dict(zip(vb, cb))
    equal = sum(c * bv.get(v, 0) for v, c in zip(va, ca))

    denom = 1 << (a + b)
    out = (Fraction(less, denom), Fraction(equal, denom), Fraction(greater, denom))
    assert sum(out) == 1
    return out


def _suffix_sums(counts: list[int]) -> list[int]:
    out = [0] * (len(counts) + 1)
    for i in range(len(counts) - 1, -1, -1):
        out[i] = out[i + 1] + counts[i]
    return out


def rw_lower_bound(a: int, b: int) -> Fraction:
    """Closed-form lower bound on P(|A| < |B|) for walk lengths a <= b:

        1/2 - P(Z = (a+b)/2) + P(X = a/2) * P(Y = b/2) / 2

    with X ~ Bin(a, 1/2), Y ~ Bin(b, 1/2), Z ~ Bin(a+b, 1/2); probabilities
    at non-integer points are zero (so odd a+b gives exactly 1/2).
    """
    if not 0 <= a <= b:
        raise ValueError(f"need 0 <= a <= b, got a={a}, b={b}")

    def central(k: int) -> Fraction:
        if k % 2:
            return Fraction(0)
        return Fraction(math.comb(k, k // 2), 1 << k)

    return Fraction(1, 2) - central(a + b) + central(a) * central(b) / 2


# ===================================================================
# REGION GEOMETRY AND ASSEMBLED BOUNDS
# ===================================================================


@dataclass(frozen=True)
class RegionMeasures:
    """Area measures of the four regions cut out by two radius-r disks whose
    centers sit at normalized distance tau = dist/r on the unit torus."""

    mu_common: float
    mu_u_exclusive: float
    mu_v_exclusive: float
    mu_outside: float
    tau: float


def region_measures(n: int, avg_degree: float, tau: float) -> RegionMeasures:
    """Region measures for an edge at normalized distance tau in [0, 2].

    The lens (intersection) measure is

        mu_common = d / ((n-1)*pi) * (2*arccos(tau/2) - sin(2*arccos(tau/2)))

    and each exclusive crescent is the disk area d/(n-1) minus the lens.
    The sine term is evaluated as tau*sqrt(1 - tau^2/4) so that tau=0 gives
    exactly the full disk and tau=2 exactly zero.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if avg_degree <= 0:
        raise ValueError(f"average degree must be > 0, got {avg_degree}")
    if not 0.0 <= tau <= 2.0:
        raise ValueError(f"tau must be in [0, 2], got {tau}")
    disk = avg_degree / (n - 1)
    lens_angle = 2.0 * math.acos(tau / 2.0) - tau * math.sqrt(1.0 - tau * tau / 4.0)
    mu_common = disk * (lens_angle / math.pi)
    mu_excl = disk - mu_common
    return RegionMeasures(
        mu_common=mu_common,
        mu_u_exclusive=mu_excl,
        mu_v_exclusive=mu_excl,
        mu_outside=1.0 - mu_common - 2.0 * mu_excl,
        tau=tau,
    )


def edge_within_tau_fraction(tau: float) -> float:
    """Probability tau^2 that a random edge of a geometric graph has
    normalized distance at most tau (ratio of disk areas)."""
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must be in [0, 1], got {tau}")
    return tau * tau


def theorem1_bound(avg_degree: float) -> float:
    """Lower bound on the expected monochrome-edge fraction after one step
    on a geometric graph with the given expected average degree:

        1/2 + 9/800 * (1/2 - 1/sqrt(2*pi*floor(d/2)))^2
                    * (1 - e^(-d/2) * (1 + d/2))

    See THEOREM1_BOUND_CAVEAT: the asymptotic (1 - o(1)) factor is not
    multiplied in.
    """
    if avg_degree < 2:
        raise ValueError(f"bound requires avg_degree >= 2, got {avg_degree}")
    half = math.floor(avg_degree / 2)
    size_factor = (0.5 - 1.0 / math.sqrt(2.0 * math.pi * half)) ** 2
    nonempty_factor = 1.0 - math.exp(-avg_degree / 2.0) * (1.0 + avg_degree / 2.0)
    return 0.5 + (9.0 / 800.0) * size_factor * nonempty_factor


def er_common_empty_probability(n: int, p: float) -> tuple[float, float]:
    """(exact P(common neighborhood empty), upper bound n*p^2 on the
    complement) for an Erdos-Renyi edge.

    Each of the n-2 other vertices joins the common neighborhood
    independently with probability p^2, so exact = (1 - p^2)^(n-2).
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    _check_prob(p)
    exact = (1.0 - float(p) ** 2) ** (n - 2)
    return exact, n * float(p) ** 2
