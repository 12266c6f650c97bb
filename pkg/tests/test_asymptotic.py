import math

import numpy as np
import pytest

from entax.asymptotic import (
    Direction,
    class_count,
    compositions,
    dilution_feasible,
    distillation_feasible,
    estimate_E,
    product_spectrum,
    rate_frontier,
    smoothed_truncate,
    spectra_majorizes,
    threshold_m,
)
from entax.errors import BudgetExceeded
from entax.majorization import random_spectrum
from entax.schmidt import EPR, PRODUCT, SchmidtVector, entropy, uniform

from oracles import (
    explicit_power,
    naive_dilution_min_m,
    naive_distillation_max_m,
    naive_majorized,
    naive_truncate,
)

S = SchmidtVector
A = S([0.9, 0.1])


def test_product_spectrum_example():
    s = product_spectrum(A, 2)
    np.testing.assert_allclose(s.probs, [0.81, 0.09, 0.01], rtol=1e-12)
    assert s.multiplicities == (1, 2, 1)
    assert s.count == 4
    s.check_invariants()


def test_product_spectrum_matches_expansion(rng):
    for _ in range(40):
        a = random_spectrum(rng, int(rng.integers(1, 4)))
        n = int(rng.integers(0, 7))
        s = product_spectrum(a, n)
        np.testing.assert_allclose(s.expand(), explicit_power(a.probs, n), rtol=1e-9, atol=1e-15)
        s.check_invariants()


def test_degenerate_coefficients_collapse():
    s = product_spectrum(uniform(4), 10)
    assert len(s) == 1
    assert s.multiplicities == (4**10,)
    s = product_spectrum(S([0.4, 0.4, 0.1, 0.1]), 6)
    assert len(s) == class_count(6, 2)
    assert s.count == 4**6


def test_compositions():
    K = compositions(4, 3)
    assert K.shape == (class_count(4, 3), 3)
    assert len(K) == math.comb(6, 2)
    assert (K.sum(axis=1) == 4).all()
    assert len({tuple(r) for r in K}) == len(K)


def test_exact_multiplicities_are_big_ints():
    s = product_spectrum(S([0.5, 0.3, 0.2]), 60)
    assert sum(s.multiplicities) == 3**60
    s.check_invariants()


def test_truncate_examples():
    s = product_spectrum(A, 2)
    t = smoothed_truncate(s, 0.15)
    # 0.81 < 0.85 so the second class is needed; 0.99 reaches it
    assert len(t) == 2
    assert t.discarded == pytest.approx(0.01)
    t = smoothed_truncate(s, 0.2)
    assert len(t) == 1
    np.testing.assert_allclose(t.probs, [1.0])
    assert smoothed_truncate(s, 0.0) is s
    with pytest.raises(ValueError):
        smoothed_truncate(s, 1.0)
    t = smoothed_truncate(product_spectrum(A, 1), 0.15)
    assert len(t) == 1 and t.probs[0] == pytest.approx(1.0)


def test_truncate_matches_naive(rng):
    for _ in range(60):
        a = random_spectrum(rng, int(rng.integers(2, 4)))
        n = int(rng.integers(1, 7))
        eps = float(rng.uniform(0, 0.4))
        t = smoothed_truncate(product_spectrum(a, n), eps)
        expect = naive_truncate(explicit_power(a.probs, n), eps)
        np.testing.assert_allclose(t.expand(), expect, rtol=1e-8, atol=1e-14)
        assert t.discarded <= eps + 1e-12
        assert t.total_mass == pytest.approx(1.0, abs=1e-9)


def test_spectra_majorizes_examples():
    assert spectra_majorizes(product_spectrum(EPR, 1), product_spectrum(A, 1))
    assert not spectra_majorizes(product_spectrum(A, 1), product_spectrum(EPR, 1))
    assert spectra_majorizes(product_spectrum(uniform(4), 1), product_spectrum(EPR, 2))
    assert spectra_majorizes(product_spectrum(EPR, 2), product_spectrum(uniform(4), 1))


def test_brute_force_equivalence(rng):
    agree = 0
    for _ in range(100):
        a = random_spectrum(rng, int(rng.integers(2, 4)))
        b = random_spectrum(rng, int(rng.integers(2, 4)))
        n = int(rng.integers(1, 6))
        k = int(rng.integers(1, 6))
        fast = spectra_majorizes(product_spectrum(a, n), product_spectrum(b, k))
        slow = naive_majorized(explicit_power(a.probs, n), explicit_power(b.probs, k))
        agree += fast == slow
    assert agree == 100


@pytest.mark.parametrize("n", range(1, 9))
def test_exact_walls_against_brute_force(n):
    assert threshold_m(A, EPR, n, 0.0, Direction.DILUTION) == naive_dilution_min_m(A.probs, n) == n
    expect = math.floor(-n * math.log2(0.9))
    assert threshold_m(A, EPR, n, 0.0, Direction.DISTILLATION) == naive_distillation_max_m(A.probs, n) == expect


@pytest.mark.parametrize("n, eps", [(4, 0.05), (6, 0.1), (8, 0.05), (7, 0.2)])
def test_smoothed_thresholds_against_brute_force(n, eps):
    assert threshold_m(A, EPR, n, eps, Direction.DILUTION) == naive_dilution_min_m(A.probs, n, eps)
    assert threshold_m(A, EPR, n, eps, Direction.DISTILLATION) == naive_distillation_max_m(A.probs, n, eps)


def test_feasibility_monotone_in_m_and_eps():
    a = S([0.7, 0.2, 0.1])
    n = 10
    dil = [dilution_feasible(EPR, m, a, n, 0.05) for m in range(0, 25)]
    assert dil == sorted(dil)
    dist = [distillation_feasible(a, n, EPR, m, 0.05) for m in range(0, 25)]
    assert dist == sorted(dist, reverse=True)
    ms = [threshold_m(a, EPR, n, eps, Direction.DILUTION) for eps in (0.0, 0.02, 0.05, 0.1, 0.3)]
    assert ms == sorted(ms, reverse=True)


def test_rational_self_similarity():
    front = rate_frontier(uniform(4), EPR, 12)
    assert [p.m for p in front.points] == [2 * n for n in range(1, 13)]


def test_frontier_best_and_reference():
    front = rate_frontier(A, EPR, 16, 0.05)
    assert front.reference_entropy_ratio == pytest.approx(entropy(A))
    best = front.best()
    assert best.m / best.n == min(p.m / p.n for p in front.points)
    dist = rate_frontier(A, EPR, 8, direction=Direction.DISTILLATION)
    assert dist.best().m / dist.best().n == max(p.m / p.n for p in dist.points)


def test_frontier_threads_match_serial():
    a = S([0.6, 0.3, 0.1])
    assert rate_frontier(a, EPR, 6, 0.05, workers=3) == rate_frontier(a, EPR, 6, 0.05)


def test_estimate_between_walls():
    est = estimate_E(A, EPR, 0.05, n=24)
    assert 0.4 < est.ratio < 1.0
    assert est.reference == pytest.approx(entropy(A))


def test_product_yardstick_distillation_is_unbounded():
    assert threshold_m(A, PRODUCT, 4, 0.0, Direction.DISTILLATION) is None


def test_budget_exceeded(monkeypatch):
    a = S([0.5, 0.3, 0.2])
    with pytest.raises(BudgetExceeded) as info:
        product_spectrum(a, 40, budget=100)
    assert info.value.needed == class_count(40, 3)
    monkeypatch.setenv("ENTAX_BUDGET", "50")
    with pytest.raises(BudgetExceeded):
        product_spectrum(a, 41)
    pt = rate_frontier(a, EPR, 12).points
    assert any(p.budget_exceeded for p in pt)
    assert all(p.m is None for p in pt if p.budget_exceeded)
