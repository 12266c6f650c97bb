import numpy as np
import pytest

from entax.errors import NotFound
from entax.majorization import (
    convertible_single_copy,
    majorized_pair,
    majorizes,
    random_spectrum,
    sample_incomparable_pair,
    t_transform,
)
from entax.schmidt import SchmidtVector, entropy, tensor

from oracles import naive_majorized

S = SchmidtVector


@pytest.mark.parametrize(
    "p, q, expected",
    [
        ((0.5, 0.5), (1.0,), True),
        ((1.0,), (0.5, 0.5), False),
        ((0.4, 0.4, 0.1, 0.1), (0.5, 0.25, 0.25), False),
    ],
)
def test_majorizes_examples(p, q, expected):
    assert majorizes(S(p), S(q)) is expected
    assert naive_majorized(p, q) is expected


def test_verdicts():
    v = convertible_single_copy(S([0.5, 0.5]), S([1.0]))
    assert v.convertible and v.failing_prefix is None

    v = convertible_single_copy(S([0.4, 0.4, 0.1, 0.1]), S([0.5, 0.25, 0.25]))
    assert not v.convertible
    assert v.failing_prefix == 2
    # prefix 2: 0.75 - 0.8
    assert v.margin == pytest.approx(-0.05)

    v = convertible_single_copy(S([0.25] * 4), S([0.5, 0.3, 0.2]))
    assert v.convertible
    assert v.to_dict() == {"convertible": True, "failing_prefix": None, "margin": v.margin}


def test_agrees_with_naive(rng):
    for _ in range(500):
        p = random_spectrum(rng, int(rng.integers(1, 7)))
        q = random_spectrum(rng, int(rng.integers(1, 7)))
        assert majorizes(p, q) == naive_majorized(p.probs, q.probs)


def test_verdict_invariants(rng):
    tol = 1e-9
    for _ in range(500):
        p = random_spectrum(rng, int(rng.integers(1, 6)))
        q = random_spectrum(rng, int(rng.integers(1, 6)))
        v = convertible_single_copy(p, q, tol)
        assert v.convertible == (v.margin >= -tol)
        assert (v.failing_prefix is None) == v.convertible


def test_order_properties(rng):
    for _ in range(1000):
        d = int(rng.integers(2, 7))
        p = random_spectrum(rng, d)
        assert majorizes(p, p)
        q = t_transform(p, rng, 2)
        s = t_transform(q, rng, 2)
        assert majorizes(q, p) and majorizes(s, q) and majorizes(s, p)
        r = random_spectrum(rng, int(rng.integers(1, 5)))
        assert majorizes(tensor(q, r), tensor(p, r))


def test_schur_concavity(rng):
    for _ in range(10_000):
        p, q = majorized_pair(rng, int(rng.integers(2, 7)))
        assert majorizes(p, q)
        assert entropy(p) >= entropy(q) - 1e-9


def test_two_way_implies_equal_entropy(rng):
    for _ in range(500):
        p = random_spectrum(rng, 4)
        q = S(p.array + np.array([1e-12, -1e-12, 0, 0]))
        if convertible_single_copy(p, q).convertible and convertible_single_copy(q, p).convertible:
            assert abs(entropy(p) - entropy(q)) <= 1e-6


def test_t_transform_preserves_rank(rng):
    for _ in range(200):
        q = random_spectrum(rng, 5)
        assert t_transform(q, rng, 5).rank == 5


def test_sample_incomparable_pair():
    pair = sample_incomparable_pair(3, rng_seed=0)
    assert not naive_majorized(pair.a.probs, pair.b.probs)
    assert not naive_majorized(pair.b.probs, pair.a.probs)
    assert majorizes(pair.ancestor, pair.a) and majorizes(pair.ancestor, pair.b)


def test_sample_incomparable_pair_errors():
    with pytest.raises(ValueError):
        sample_incomparable_pair(2, rng_seed=0)
    # with a single attempt the first draw may well be comparable
    outcomes = set()
    for seed in range(40):
        try:
            sample_incomparable_pair(4, rng_seed=seed, max_attempts=1)
            outcomes.add("found")
        except NotFound:
            outcomes.add("missing")
    assert outcomes == {"found", "missing"}


def test_crossing_prefix_example():
    a, b = S([0.6, 0.2, 0.2]), S([0.5, 0.4, 0.1])
    assert not majorizes(a, b) and not majorizes(b, a)
