"""Counting oracles for the broken-stick systems.

Three independent ways to count solutions, used to cross-validate each
other and the closed forms:

* ``count_constrained``: exhaustive search over ordered integer
  solutions of the window-inequality system with a given total.
* ``count_restricted`` / ``series_coefficients``: classical coin-style
  partition DP, counting by part sizes (the elimination engine's
  output) instead of by direct search.
* ``hermite_coeff``: series coefficient of the all-pieces polygon
  generating function, counting compositions into n positive parts
  each at most half the total.

``asymptotic_ratio`` and ``limit_probability`` relate the discrete
counts back to the continuous probabilities.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial, prod
from typing import Iterable, Literal

from .genfib import parts_multiset
from .omega import ClosedProduct
from .probability import ProblemSpec

__all__ = [
    "ResourceLimitError",
    "count_constrained",
    "count_restricted",
    "series_coefficients",
    "hermite_coeff",
    "asymptotic_ratio",
    "limit_probability",
]

Positivity = Literal["nonneg", "positive"]

# Exhaustive search refuses totals whose estimated node count
# N^(n-1) / (n! (n-1)!) exceeds this.  N = 40 at n <= 7 and N <= 150 at
# n <= 4 stay well inside.
_NODE_CAP = 10_000_000


class ResourceLimitError(RuntimeError):
    """Exhaustive search would exceed the documented practical bound."""


def count_constrained(
    spec: ProblemSpec,
    n_value: int,
    positivity: Positivity = "nonneg",
    descending: bool = True,
) -> int:
    """Count weakly decreasing integer vectors satisfying the window system.

    Vectors (a_1 >= a_2 >= ... >= a_n) with every a_i >= 0 (or >= 1 for
    ``positivity="positive"``), total exactly ``n_value``, and every
    window inequality a_i >= a_{i+1} + ... + a_{i+k-1}.  Plain
    backtracking over candidate values with remaining-total and window
    pruning; ``descending`` flips the candidate order inside each slot,
    which must not change the count (exercised by the tests).

    Raises ``ResourceLimitError`` when the crude node estimate
    n_value^(n-1) / (n! (n-1)!) exceeds ten million.
    """
    if n_value < 0:
        raise ValueError(f"total must be nonnegative, got {n_value}")
    if positivity not in ("nonneg", "positive"):
        raise ValueError(f"positivity must be 'nonneg' or 'positive', got {positivity!r}")
    k, n = spec.k, spec.n
    estimate = n_value ** (n - 1) // (factorial(n) * factorial(n - 1))
    if estimate > _NODE_CAP:
        raise ResourceLimitError(
            f"total {n_value} with n={n} needs about {estimate} search nodes"
            f" (limit {_NODE_CAP})"
        )
    lo = 1 if positivity == "positive" else 0
    vals = [0] * n

    def feasible(pos: int) -> bool:
        # Check every window whose small side contains pos, using the
        # values fixed so far and the floor lo for the rest.
        for s in range(max(0, pos - k + 1), min(pos - 1, n - k) + 1):
            tail = sum(vals[s + 1 : pos + 1]) + lo * (s + k - 1 - pos)
            if vals[s] < tail:
                return False
        return True

    def rec(pos: int, prev: int, remaining: int) -> int:
        if pos == n:
            return 1 if remaining == 0 else 0
        slots_after = n - pos - 1
        hi = min(prev, remaining - lo * slots_after)
        lo_here = max(lo, -(-remaining // (slots_after + 1)))
        if hi < lo_here:
            return 0
        candidates = (
            range(hi, lo_here - 1, -1) if descending else range(lo_here, hi + 1)
        )
        total = 0
        for v in candidates:
            vals[pos] = v
            if feasible(pos):
                total += rec(pos + 1, v, remaining - v)
        return total

    return rec(0, n_value, n_value)


def _restricted_table(parts: Iterable[int], n_max: int) -> list[int]:
    ways = [0] * (n_max + 1)
    ways[0] = 1
    for p in parts:
        if p < 1:
            raise ValueError(f"part sizes must be positive, got {p}")
        for s in range(p, n_max + 1):
            ways[s] += ways[s - p]
    return ways


def count_restricted(parts: Iterable[int], n_value: int) -> int:
    """Partitions of n_value into parts drawn from ``parts``, repetition allowed.

    A repeated size in ``parts`` counts as a distinct part type, so
    ([1, 1], s) gives s + 1, not 1.  Coin-change DP, O(len(parts) * n_value).
    """
    if n_value < 0:
        raise ValueError(f"total must be nonnegative, got {n_value}")
    return _restricted_table(parts, n_value)[n_value]


def series_coefficients(product: ClosedProduct, n_max: int) -> list[int]:
    """Coefficients 0..n_max of prod_i 1/(1 - q^e_i) for the closed product."""
    if n_max < 0:
        raise ValueError(f"truncation order must be nonnegative, got {n_max}")
    return _restricted_table(product.exponents, n_max)


def _poly_mul(a: list[int], b: list[int], cap: int) -> list[int]:
    out = [0] * (cap + 1)
    for i, ai in enumerate(a):
        if ai and i <= cap:
            for j, bj in enumerate(b):
                if i + j > cap:
                    break
                out[i + j] += ai * bj
    return out


def _series_inverse(p: list[int], cap: int) -> list[int]:
    # 1 / p modulo q^(cap+1); requires p[0] == 1.
    inv = [0] * (cap + 1)
    inv[0] = 1
    for m in range(1, cap + 1):
        acc = 0
        for i in range(1, min(m, len(p) - 1) + 1):
            acc += p[i] * inv[m - i]
        inv[m] = -acc
    return inv


def _binomial_poly(sign: int, power: int) -> list[int]:
    # (1 + sign*q)^power as a coefficient list.
    return [comb(power, i) * (sign**i) for i in range(power + 1)]


def hermite_coeff(n: int, n_value: int) -> int:
    """Number of compositions of n_value into n positive parts, each part
    at most half the total (so degenerate flat n-gons are included).

    Computed as the q^n_value coefficient of

        q^n / (1-q)^n  -  n * q^(2n-1) / ((1-q)^n (1+q)^(n-1))

    by dense truncated series arithmetic.
    """
    if n < 3:
        raise ValueError(f"piece count must be at least 3, got {n}")
    if n_value < 0:
        raise ValueError(f"total must be nonnegative, got {n_value}")
    cap = n_value
    first = _series_inverse(_binomial_poly(-1, n), cap)
    term1 = first[n_value - n] if n_value >= n else 0
    shift = 2 * n - 1
    if n_value < shift:
        return term1
    den = _poly_mul(_binomial_poly(-1, n), _binomial_poly(1, n - 1), cap)
    second = _series_inverse(den, cap)
    return term1 - n * second[n_value - shift]


def asymptotic_ratio(spec: ProblemSpec, n_value: int) -> Fraction:
    """Restricted-partition count over its leading-order prediction.

    With r part sizes of product P, partitions of N into those parts
    number N^(r-1) / ((r-1)! P) to leading order; the exact ratio
    returned here tends to 1 as n_value grows.
    """
    if n_value < 1:
        raise ValueError(f"total must be positive, got {n_value}")
    parts = parts_multiset(spec.k, spec.n)
    r = len(parts)
    count = count_restricted(parts, n_value)
    return Fraction(count * factorial(r - 1) * prod(parts), n_value ** (r - 1))


def limit_probability(spec: ProblemSpec, n_value: int) -> Fraction:
    """Discrete stand-in for the no-polygon probability at total n_value.

    n! times the count of ordered positive solutions, divided by the
    number C(n_value - 1, n - 1) of compositions of n_value into n
    positive parts.  Converges to ``prob_none`` as n_value grows; for
    small totals the n! factor overcounts outcomes with tied piece
    sizes and the value may exceed 1.
    """
    if n_value <= spec.n:
        raise ValueError(
            f"total must exceed the piece count, got total={n_value}, n={spec.n}"
        )
    count = count_constrained(spec, n_value, "positive")
    return Fraction(
        factorial(spec.n) * count, comb(n_value - 1, spec.n - 1)
    )
