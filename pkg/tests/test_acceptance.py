"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line; they are printed together at the end of
the pytest run (see ``conftest.py``) and also when this file is executed
directly with ``python tests/test_acceptance.py``.
"""
import math
import time

import numpy as np
import pytest

from entax.asymptotic import Direction, estimate_E, product_spectrum, rate_frontier, spectra_majorizes
from entax.axioms import HarnessConfig, check_internal_state, run_axiom_suite
from entax.catalysis import convertible_with_catalyst
from entax.majorization import convertible_single_copy, random_spectrum
from entax.multipartite import ghz_counterexample
from entax.schmidt import EPR, SchmidtVector, uniform

from oracles import explicit_power, naive_dilution_min_m, naive_distillation_max_m, naive_majorized

RESULTS = []

A = SchmidtVector([0.9, 0.1])


def record(num, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {num}: {title} -- {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_1_catalysis_witness():
    t0 = time.perf_counter()
    a = SchmidtVector([0.4, 0.4, 0.1, 0.1])
    b = SchmidtVector([0.5, 0.25, 0.25])
    plain = convertible_single_copy(a, b)
    cat = convertible_with_catalyst(a, b, SchmidtVector([0.6, 0.4]))
    # hand prefix sums: a -> (0.4, 0.8, 0.9, 1.0), b -> (0.5, 0.75, 1.0)
    hand_fail = next(k + 1 for k, (p, q) in enumerate(zip((0.4, 0.8, 0.9), (0.5, 0.75, 1.0))) if p > q)
    dt = time.perf_counter() - t0
    ok = (not plain.convertible and plain.failing_prefix == 2 == hand_fail
          and cat.convertible and dt < 1.0)
    record(1, "catalysis witness", ok,
           f"plain={plain.convertible} prefix={plain.failing_prefix} catalysed={cat.convertible} {dt:.3f}s")


def test_criterion_2_exact_walls():
    t0 = time.perf_counter()
    dil = rate_frontier(A, EPR, 12, 0.0, Direction.DILUTION)
    dist = rate_frontier(A, EPR, 12, 0.0, Direction.DISTILLATION)
    dil_ok = [p.m for p in dil.points] == list(range(1, 13))
    wall = [math.floor(n * -math.log2(0.9)) for n in range(1, 13)]
    dist_ok = [p.m for p in dist.points] == wall
    brute_ok = all(
        naive_dilution_min_m(A.probs, n) == dil.points[n - 1].m
        and naive_distillation_max_m(A.probs, n) == dist.points[n - 1].m
        for n in range(1, 9)
    )
    dt = time.perf_counter() - t0
    record(2, "exact-rate walls", dil_ok and dist_ok and brute_ok and dt < 10.0,
           f"dilution m=n:{dil_ok} distillation floor(0.152n):{dist_ok} brute n<=8:{brute_ok} {dt:.2f}s")


def test_criterion_3_smoothed_convergence():
    t0 = time.perf_counter()
    est = estimate_E(A, EPR, 0.05, n=64)
    dt = time.perf_counter() - t0
    ok = abs(est.ratio - 0.4690) <= 0.15 and 0.40 < est.ratio < 1.0 and dt < 60.0
    record(3, "smoothed convergence", ok,
           f"best m/n={est.m}/{est.n}={est.ratio:.4f} entropy={est.reference:.4f} {dt:.2f}s")


def test_criterion_4_rational_self_similarity():
    front = rate_frontier(uniform(4), EPR, 12)
    ratios = [p.m / p.n for p in front.points]
    record(4, "rational self-similarity", all(r == 2.0 for r in ratios), f"m/n={sorted(set(ratios))}")


@pytest.mark.slow
def test_criterion_5_axiom_battery():
    t0 = time.perf_counter()
    reports = {r.axiom: r for r in run_axiom_suite(HarnessConfig())}
    dt = time.perf_counter() - t0
    clean = ["A1", "A2", "A3", "A4-forward", "E-additivity", "E-monotonicity"]
    zero = all(reports[k].violations == 0 and reports[k].budget_errors == 0 for k in clean)
    pairs_ok = reports["E-monotonicity"].samples >= 10_000 and reports["E-additivity"].tolerances["atol"] <= 1e-9
    incomparable = reports["A5-single-copy"].metrics["incomparable_pairs"]
    agreement = reports["A5-asymptotic"].metrics["agreement"]
    ok = zero and pairs_ok and incomparable >= 1 and agreement >= 0.95 and dt < 300.0
    viol = {k: reports[k].violations for k in clean}
    record(5, "axiom battery", ok,
           f"violations={viol} incomparable={incomparable} agreement={agreement:.4f} {dt:.1f}s")


def test_criterion_6_internal_state():
    rng = np.random.default_rng(6)
    hits = 0
    for _ in range(100):
        x = random_spectrum(rng, int(rng.integers(2, 7)))
        res = check_internal_state(EPR, x)
        hits += res.contained and res.n == math.ceil(math.log2(x.rank))
    record(6, "internal state", hits == 100, f"{hits}/100 minimal n = ceil(log2 rank)")


def test_criterion_7_multipartite():
    t0 = time.perf_counter()
    rep = ghz_counterexample()
    dt = time.perf_counter() - t0
    ent = rep["ghz_cut_entropies"]
    ok = (rep["b_to_c"]["cut"] == [1] and rep["c_to_b"]["cut"] == [3]
          and all(abs(v - 1.0) <= 1e-9 for v in ent.values())
          and not rep["a_to_b"]["obstructed"] and not rep["a_to_c"]["obstructed"] and dt < 1.0)
    record(7, "multipartite counterexample", ok,
           f"b->c cut {rep['b_to_c']['cut']} c->b cut {rep['c_to_b']['cut']} ghz={ent} {dt:.3f}s")


def test_criterion_8_brute_force_equivalence():
    rng = np.random.default_rng(8)
    agree = 0
    for _ in range(100):
        d = int(rng.integers(2, 4))
        a = random_spectrum(rng, d)
        b = random_spectrum(rng, int(rng.integers(2, 4)))
        n = int(rng.integers(1, 9))
        k = int(rng.integers(1, 9))
        # keep the explicit oracle small enough to enumerate
        while len(b) ** k > 4000:
            k -= 1
        fast_ab = spectra_majorizes(product_spectrum(a, n), product_spectrum(b, k))
        slow_ab = naive_majorized(explicit_power(a.probs, n), explicit_power(b.probs, k))
        agree += fast_ab == slow_ab
    record(8, "brute-force equivalence", agree == 100, f"{agree}/100 agree")


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
