"""Acceptance gate: the ten checks this package must pass, with their
tolerances and runtime budgets pinned.

Each test prints one [PASS]/[FAIL] line into the terminal summary via
the conftest hook, carrying its measured numbers.
"""

import time
from fractions import Fraction
from math import comb, factorial

from brokenstick import (
    DEFAULT_CHUNKS,
    DEFAULT_SEED,
    ProblemSpec,
    f_sum,
    gen_fib,
    limit_probability,
    prob_exists,
    prob_forall,
    prob_ngon,
    prob_none,
)
from brokenstick.verification import (
    suite_asymptotic,
    suite_hermite,
    suite_lemma1,
    suite_montecarlo,
    suite_prop2,
)

from conftest import record_criterion


def _report(num: int, description: str, problems: list[str]) -> None:
    status = "PASS" if not problems else "FAIL"
    record_criterion(f"[{status}] criterion {num:02d}: {description}")
    assert not problems, f"criterion {num}: " + "; ".join(problems)


def _best_call_seconds(fn, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def test_criterion_01_quadrilateral_probabilities_exact_and_fast():
    cases = [(4, 4, Fraction(1, 2)), (4, 5, Fraction(15, 88)), (4, 6, Fraction(3, 80))]
    problems = []
    worst = 0.0
    for k, n, want in cases:
        spec = ProblemSpec(k, n)
        got = prob_none(spec)
        if got != want:
            problems.append(f"prob_none({k},{n}) = {got}, want {want}")
        seconds = _best_call_seconds(lambda: prob_none(spec))
        worst = max(worst, seconds)
        if seconds >= 1e-3:
            problems.append(f"prob_none({k},{n}) took {seconds * 1e3:.3f} ms (budget 1 ms)")
    _report(
        1,
        f"no-quadrilateral probabilities exact at n=4,5,6, slowest call {worst * 1e6:.0f} us"
        " (budget 1 ms each)",
        problems,
    )


def test_criterion_02_order3_running_sums():
    want = (1, 2, 4, 8, 15, 28, 52, 96, 177)
    got = tuple(f_sum(3, i) for i in range(2, 11))
    problems = [] if got == want else [f"f_3(2..10) = {got}, want {want}"]
    _report(2, f"order-3 running sums f(2..10) = {got}", problems)


def test_criterion_03_triangle_closed_forms_match():
    problems = []
    for n in range(3, 13):
        denom = 1
        for j in range(2, n + 1):
            denom *= gen_fib(2, j + 2) - 1
        want_exists = 1 - Fraction(factorial(n), denom)
        got_exists = prob_exists(ProblemSpec(3, n))
        if got_exists != want_exists:
            problems.append(f"exists(3,{n}) = {got_exists}, want {want_exists}")
        want_forall = Fraction(1, comb(2 * n - 2, n))
        got_forall = prob_forall(ProblemSpec(3, n))
        if got_forall != want_forall:
            problems.append(f"forall(3,{n}) = {got_forall}, want {want_forall}")
    _report(
        3,
        "triangle probabilities match both published closed forms for n=3..12",
        problems,
    )


def test_criterion_04_elimination_matches_prediction():
    t0 = time.perf_counter()
    checks = suite_prop2(k_values=(3, 4, 5, 6), n_extra=4)
    elapsed = time.perf_counter() - t0
    problems = [f"{c.name}: {c.detail}" for c in checks if not c.ok]
    if elapsed >= 1.0:
        problems.append(f"grid took {elapsed:.2f} s (budget 1 s)")
    _report(
        4,
        f"eliminated exponents match the running-sum prediction on the full grid,"
        f" {elapsed * 1e3:.0f} ms (budget 1 s)",
        problems,
    )


def test_criterion_05_series_counts_equal_direct_counts():
    t0 = time.perf_counter()
    checks = suite_lemma1(k_values=(3, 4, 5), n_extra=3, max_total=30)
    elapsed = time.perf_counter() - t0
    problems = [f"{c.name}: {c.detail}" for c in checks if not c.ok]
    if elapsed >= 120.0:
        problems.append(f"grid took {elapsed:.1f} s (budget 120 s)")
    _report(
        5,
        f"series coefficients equal exhaustive counts for k=3..5, totals to 30,"
        f" {elapsed:.1f} s (budget 120 s)",
        problems,
    )


def test_criterion_06_polygon_composition_series():
    checks = suite_hermite(n_values=(3, 4, 5), max_total=25, ratio_total=400, ratio_tol=0.05)
    problems = [f"{c.name}: {c.detail}" for c in checks if not c.ok]
    _report(
        6,
        "polygon-composition series exact to total 25 and within 0.05 of the"
        " continuous value at total 400",
        problems,
    )


def test_criterion_07_asymptotic_ratio():
    t0 = time.perf_counter()
    checks = suite_asymptotic(big_total=100_000, small_total=1_000, rel_tol=0.02)
    elapsed = time.perf_counter() - t0
    problems = [f"{c.name}: {c.detail}" for c in checks if not c.ok]
    if elapsed >= 5.0:
        problems.append(f"took {elapsed:.2f} s (budget 5 s)")
    details = "; ".join(c.detail for c in checks if "ratio" in c.name)
    _report(
        7,
        f"restricted-count ratio near 1 at total 1e5 and improving ({details}),"
        f" {elapsed:.2f} s (budget 5 s)",
        problems,
    )


def test_criterion_08_discrete_probabilities_converge():
    targets = [
        (ProblemSpec(3, 3), 30, Fraction(3, 4)),
        (ProblemSpec(4, 4), 40, Fraction(1, 2)),
    ]
    problems = []
    gaps = []
    for spec, total, target in targets:
        value = limit_probability(spec, total)
        gap = abs(value - target)
        gaps.append(f"k={spec.k}: gap {float(gap):.4f} at {total}")
        if gap > Fraction(15, 100):
            problems.append(
                f"limit({spec.k},{spec.n},{total}) = {float(value):.4f},"
                f" target {float(target):.4f}, gap {float(gap):.4f} > 0.15"
            )
        doubled_gap = abs(limit_probability(spec, 2 * total) - target)
        if not doubled_gap < gap:
            problems.append(
                f"gap did not shrink doubling the total for ({spec.k},{spec.n}):"
                f" {float(gap):.4f} -> {float(doubled_gap):.4f}"
            )
    _report(
        8,
        f"discrete probabilities within 0.15 of the continuous values and"
        f" tightening ({'; '.join(gaps)})",
        problems,
    )


def test_criterion_09_simulation_gate():
    t0 = time.perf_counter()
    checks = suite_montecarlo(
        trials=1_000_000, seed=DEFAULT_SEED, chunks=DEFAULT_CHUNKS, sigma=4.0
    )
    elapsed = time.perf_counter() - t0
    problems = [f"{c.name}: {c.detail}" for c in checks if not c.ok]
    if elapsed >= 30.0:
        problems.append(f"took {elapsed:.1f} s (budget 30 s)")
    _report(
        9,
        f"all seven simulated cases within 4 standard errors at 1e6 trials"
        f" with the shipped seed, {elapsed:.1f} s (budget 30 s)",
        problems,
    )


def test_criterion_10_all_pieces_collapse():
    problems = []
    for n in range(3, 9):
        spec = ProblemSpec(n, n)
        want_none = Fraction(n, 2 ** (n - 1))
        if prob_none(spec) != want_none:
            problems.append(f"prob_none({n},{n}) != {want_none}")
        if prob_exists(spec) != prob_ngon(n):
            problems.append(f"prob_exists({n},{n}) != prob_ngon({n})")
        if prob_forall(spec) != prob_ngon(n):
            problems.append(f"prob_forall({n},{n}) != prob_ngon({n})")
    _report(
        10,
        "choosing all pieces collapses both events to the single n-gon",
        problems,
    )
