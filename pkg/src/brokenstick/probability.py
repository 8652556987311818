"""Exact rational probabilities for polygons made from a broken stick.

A unit stick is cut at n - 1 points chosen uniformly at random.  For a
polygon size k (3 <= k <= n) the three events of interest are:

* none:   no k of the n pieces can form a k-gon with positive area,
* exists: some k pieces can,
* forall: every choice of k pieces can.

Ties lose: a selection whose longest piece exactly equals the sum of
the others is flat and does not count as a polygon.  All results are
``fractions.Fraction`` values in lowest terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, prod, factorial

from .genfib import parts_multiset

__all__ = [
    "ExactRational",
    "ProblemSpec",
    "prob_none",
    "prob_exists",
    "prob_forall",
    "prob_ngon",
]

# Exact signed rationals, always reduced.  The stdlib type does
# everything required (arithmetic, comparison, hashing, str as "p/q"),
# so it is used directly rather than wrapped.
ExactRational = Fraction


@dataclass(frozen=True)
class ProblemSpec:
    """A (k, n) problem instance: k-gons from n stick pieces."""

    k: int
    n: int

    def __post_init__(self) -> None:
        if self.k < 3:
            raise ValueError(f"polygon size must be at least 3, got k={self.k}")
        if self.n < self.k:
            raise ValueError(
                f"piece count must be at least the polygon size, got k={self.k}, n={self.n}"
            )


def prob_none(spec: ProblemSpec) -> Fraction:
    """Probability that no k pieces form a k-gon.

    Closed form n! divided by the product of the n part sizes from
    ``parts_multiset``; for k = n this collapses to n / 2^(n-1).
    """
    return Fraction(factorial(spec.n), prod(parts_multiset(spec.k, spec.n)))


def prob_exists(spec: ProblemSpec) -> Fraction:
    """Probability that at least one choice of k pieces forms a k-gon."""
    return 1 - prob_none(spec)


def prob_forall(spec: ProblemSpec) -> Fraction:
    """Probability that every choice of k pieces forms a k-gon.

    Alternating-sum closed form: with m = n - k + 2,

        (n (n-1) ... (n-k+3) / m) *
            sum_{j=1}^{m} (-1)^(j+1) j^-(k-3) C(m, j) / rising(m/j + 1, k-2)

    where rising(x, r) = x (x+1) ... (x+r-1).  Every term is rational,
    so the sum is evaluated exactly.
    """
    k, n = spec.k, spec.n
    m = n - k + 2
    lead = Fraction(prod(range(n - k + 3, n + 1)), m)
    total = Fraction(0)
    for j in range(1, m + 1):
        base = Fraction(m, j) + 1
        rising = prod((base + i for i in range(k - 2)), start=Fraction(1))
        term = Fraction(comb(m, j), j ** (k - 3)) / rising
        total += term if j % 2 == 1 else -term
    return lead * total


def prob_ngon(n: int) -> Fraction:
    """Probability that all n pieces together form an n-gon: 1 - n / 2^(n-1)."""
    if n < 3:
        raise ValueError(f"polygon size must be at least 3, got n={n}")
    return 1 - Fraction(n, 2 ** (n - 1))
