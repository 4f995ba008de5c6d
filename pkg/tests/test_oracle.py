import random

import pytest

from core.combinatorics import binomial
from core.errors import CapExceededError
from core.oracle import brute_force_weight, evaluate_anf, literal_enumeration_weight
from core.weights import Esbf, value_vector, weight_exact


@pytest.mark.parametrize("n,d,weight", [(4, 2, 10), (7, 2, 64), (6, 6, 1), (5, 1, 16)])
def test_brute_force_weight_examples(n, d, weight):
    assert brute_force_weight(Esbf(n, d)).weight == weight


@pytest.mark.parametrize("n,d,weight", [(4, 2, 10), (5, 1, 16), (6, 6, 1), (7, 2, 64)])
def test_literal_enumeration_examples(n, d, weight):
    assert literal_enumeration_weight(Esbf(n, d)) == weight


def test_per_level_counts_are_constant_on_levels():
    summary = brute_force_weight(Esbf(10, 3))
    assert len(summary.per_level_counts) == 11
    assert summary.weight == sum(summary.per_level_counts)
    for i, count in enumerate(summary.per_level_counts):
        assert count in (0, binomial(10, i))


def test_level_oracle_agrees_with_weight_engine():
    for n in range(1, 65):
        for d in range(1, n + 1):
            e = Esbf(n, d)
            assert brute_force_weight(e, cap=64).weight == weight_exact(e).weight, (n, d)


def test_literal_oracle_agrees_with_level_oracle():
    for n in range(1, 15):
        for d in range(1, n + 1):
            e = Esbf(n, d)
            assert literal_enumeration_weight(e) == brute_force_weight(e).weight, (n, d)


@pytest.mark.slow
def test_literal_oracle_agrees_full_range():
    for n in range(15, 21):
        for d in range(1, n + 1):
            e = Esbf(n, d)
            assert literal_enumeration_weight(e) == weight_exact(e).weight, (n, d)


def test_caps_are_enforced():
    with pytest.raises(CapExceededError):
        brute_force_weight(Esbf(41, 2))
    with pytest.raises(CapExceededError):
        literal_enumeration_weight(Esbf(21, 2))
    with pytest.raises(CapExceededError):
        literal_enumeration_weight(Esbf(12, 2), cap=10)


def _check_permutation_symmetry(n_max, rng):
    for n in range(1, n_max + 1):
        for d in range(1, n + 1):
            e = Esbf(n, d)
            levels = value_vector(e).bits
            for _ in range(100):
                x = [rng.randint(0, 1) for _ in range(n)]
                perm = list(range(n))
                rng.shuffle(perm)
                y = [x[perm[k]] for k in range(n)]
                assert evaluate_anf(e, x) == evaluate_anf(e, y) == levels[sum(x)], (n, d, x)


def test_anf_is_symmetric_under_permutations():
    _check_permutation_symmetry(8, random.Random(7))


@pytest.mark.slow
def test_anf_is_symmetric_under_permutations_full_range():
    _check_permutation_symmetry(12, random.Random(11))
