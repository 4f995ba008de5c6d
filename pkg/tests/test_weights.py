import random

import pytest

from core.combinatorics import binomial, preceq
from core.errors import InvalidParametersError
from core.weights import (
    Esbf,
    SimplifiedVector,
    Trichotomy,
    balanced_degree_bound,
    is_balanced,
    mobius_anf_from_value,
    mobius_value_from_anf,
    power_decomposition,
    support_intersection,
    value_vector,
    weight_exact,
)


@pytest.mark.parametrize("n,d", [(0, 1), (3, 0), (3, 4), (-2, 1)])
def test_esbf_rejects_invalid_pairs(n, d):
    with pytest.raises(InvalidParametersError):
        Esbf(n, d)


def test_esbf_rejects_non_integers():
    with pytest.raises(InvalidParametersError):
        Esbf(5.0, 2)


@pytest.mark.parametrize(
    "n,d,bits",
    [
        (3, 2, (0, 0, 1, 1)),
        (4, 1, (0, 1, 0, 1, 0)),
        (6, 6, (0, 0, 0, 0, 0, 0, 1)),
    ],
)
def test_value_vector_examples(n, d, bits):
    assert value_vector(Esbf(n, d)).bits == bits


def test_value_vector_matches_binomial_parity():
    for n in range(1, 40):
        for d in range(1, n + 1):
            assert value_vector(Esbf(n, d)).bits == tuple(binomial(i, d) % 2 for i in range(n + 1))


def test_mobius_examples():
    lam = SimplifiedVector.from_bits((1, 1, 0, 0))
    assert mobius_value_from_anf(lam).bits == (1, 0, 1, 0)
    assert mobius_anf_from_value(SimplifiedVector.from_bits((1, 0, 1, 0))).bits == (1, 1, 0, 0)
    zero = SimplifiedVector(5, (0,) * 6)
    assert mobius_value_from_anf(zero) == zero
    assert mobius_anf_from_value(zero) == zero


def test_indicator_of_d_transforms_to_value_vector():
    for n in range(1, 33):
        for d in range(1, n + 1):
            lam = SimplifiedVector.indicator(n, [d])
            assert mobius_value_from_anf(lam) == value_vector(Esbf(n, d))


def test_mobius_transforms_are_inverse():
    rng = random.Random(20240611)
    for n in (1, 2, 3, 7, 8, 15, 16, 31, 100):
        for _ in range(20):
            v = SimplifiedVector(n, tuple(rng.randint(0, 1) for _ in range(n + 1)))
            assert mobius_value_from_anf(mobius_anf_from_value(v)) == v
            assert mobius_anf_from_value(mobius_value_from_anf(v)) == v


def test_simplified_vector_length_is_checked():
    with pytest.raises(InvalidParametersError):
        SimplifiedVector(3, (0, 1))


@pytest.mark.parametrize(
    "n,d,weight,trichotomy",
    [
        (7, 2, 64, Trichotomy.EQUAL),
        (8, 2, 120, Trichotomy.LESS),
        (12, 2, 2080, Trichotomy.GREATER),
        (12, 6, 1716, Trichotomy.LESS),
    ],
)
def test_weight_exact_examples(n, d, weight, trichotomy):
    report = weight_exact(Esbf(n, d))
    assert report.weight == weight
    assert report.trichotomy is trichotomy


def test_weight_of_linear_function_is_half():
    for n in range(1, 200):
        report = weight_exact(Esbf(n, 1))
        assert report.weight == 1 << (n - 1)
        assert report.balanced


def test_weight_hex_is_lowercase_without_prefix():
    assert weight_exact(Esbf(12, 2)).weight_hex == "820"
    assert weight_exact(Esbf(7, 2)).weight_hex == "40"


@pytest.mark.parametrize("n,d,expected", [(7, 2, True), (8, 2, False), (15, 4, True), (15, 6, False)])
def test_is_balanced_examples(n, d, expected):
    assert is_balanced(Esbf(n, d)) is expected


def test_weight_of_top_degree_is_one():
    for n in range(1, 60):
        assert weight_exact(Esbf(n, n)).weight == 1


def test_power_decomposition():
    assert power_decomposition(12) == [2, 3]
    assert power_decomposition(6) == [1, 2]
    assert power_decomposition(1 << 9) == [9]
    with pytest.raises(InvalidParametersError):
        power_decomposition(0)


def test_support_intersection_is_value_vector():
    for n in range(1, 50):
        for d in range(1, n + 1):
            assert support_intersection(n, d) == value_vector(Esbf(n, d))


def test_value_vector_of_join_is_product():
    for n in range(1, 30):
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                if i | j > n:
                    continue
                a, b = value_vector(Esbf(n, i)), value_vector(Esbf(n, j))
                assert a & b == value_vector(Esbf(n, i | j))


def test_balanced_degree_bound_holds_for_composite_degrees():
    for n in range(2, 80):
        for d in range(3, n + 1):
            if bin(d).count("1") >= 2 and is_balanced(Esbf(n, d)):
                assert d <= balanced_degree_bound(n)


def test_composite_degree_weight_is_below_every_power_part():
    for n in range(3, 65):
        for d in range(3, n + 1):
            parts = power_decomposition(d)
            if len(parts) < 2:
                continue
            weight = weight_exact(Esbf(n, d)).weight
            assert weight < min(weight_exact(Esbf(n, 1 << k)).weight for k in parts), (n, d)


def test_even_composite_degrees_meeting_the_digit_criterion_are_below_half():
    checked = 0
    for n in range(2, 65):
        for d in range(2, n + 1, 2):
            parts = power_decomposition(d)
            if len(parts) < 2:
                continue
            if not preceq(2 * d, n) or preceq((1 << (parts[0] + 2)) - 1, n):
                assert weight_exact(Esbf(n, d)).trichotomy is Trichotomy.LESS, (n, d)
                checked += 1
    assert checked > 0


@pytest.mark.slow
def test_balanced_degrees_never_exceed_half_of_n():
    for n in range(1, 129):
        for d in range(1, n + 1):
            if is_balanced(Esbf(n, d)):
                assert d <= (n + 1) // 2, (n, d)
