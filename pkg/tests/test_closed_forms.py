from fractions import Fraction

import pytest

from core.closed_forms import (
    ClosedFormEval,
    pow2_coefficients,
    quarter_trichotomy_pow2_plus1,
    residue_class_sum_closed,
    trichotomy_weight_pow2,
    weight_pow2_closed,
    weight_pow2_plus1_closed,
    weight_two_powers_closed,
)
from core.combinatorics import residue_class_sum
from core.config import Settings
from core.errors import InvalidParametersError, PrecisionInsufficientError
from core.weights import Esbf, Trichotomy, weight_exact


def _exact(n, d):
    return weight_exact(Esbf(n, d)).weight


def test_closed_form_eval_properties():
    ev = ClosedFormEval(Fraction(99, 10), Fraction(101, 10), 64)
    assert ev.nearest == 10
    assert ev.error_bound == Fraction(1, 10)
    assert ev.certified
    assert not ClosedFormEval(Fraction(9), Fraction(10), 64).certified


@pytest.mark.parametrize("n,p,i", [(4, 1, 0), (5, 2, 1), (7, 2, 3), (1, 1, 1), (30, 3, 5)])
def test_residue_class_sum_closed_rounds_to_exact(n, p, i):
    result = residue_class_sum_closed(n, p, i)
    assert result.certified
    assert result.lower <= residue_class_sum(n, 1 << p, i) <= result.upper
    assert result.nearest == residue_class_sum(n, 1 << p, i)


def test_residue_class_sum_closed_examples():
    assert residue_class_sum_closed(4, 1, 0).nearest == 8
    assert residue_class_sum_closed(5, 2, 1).nearest == 6


def test_residue_class_sum_closed_all_residues():
    for n in range(1, 40):
        for p in range(1, n.bit_length() + 1):
            for i in range(1 << p):
                assert residue_class_sum_closed(n, p, i).nearest == residue_class_sum(n, 1 << p, i)


def test_residue_class_sum_closed_rejects_bad_residue():
    with pytest.raises(InvalidParametersError):
        residue_class_sum_closed(5, 2, 4)
    with pytest.raises(InvalidParametersError):
        residue_class_sum_closed(5, 0, 0)


def test_precision_insufficient_without_escalation():
    with pytest.raises(PrecisionInsufficientError) as info:
        weight_pow2_closed(200, 3, precision_bits=8, escalate=False)
    assert info.value.precision_bits == 8


def test_precision_escalates_from_low_start():
    result = weight_pow2_closed(200, 3, precision_bits=8)
    assert result.escalations >= 1
    assert result.precision_bits > 8
    assert result.nearest == _exact(200, 8)


def test_precision_cap_is_respected():
    settings = Settings(precision_cap_bits=64)
    with pytest.raises(PrecisionInsufficientError):
        weight_pow2_closed(300, 2, precision_bits=32, settings=settings)


@pytest.mark.parametrize(
    "n,t,expected",
    [(8, 1, Trichotomy.LESS), (7, 1, Trichotomy.EQUAL), (12, 1, Trichotomy.GREATER), (15, 2, Trichotomy.EQUAL)],
)
def test_trichotomy_weight_pow2_examples(n, t, expected):
    assert trichotomy_weight_pow2(n, t) is expected


def test_trichotomy_weight_pow2_matches_exact():
    for n in range(2, 200):
        t = 1
        while (1 << t) <= n:
            assert trichotomy_weight_pow2(n, t) is weight_exact(Esbf(n, 1 << t)).trichotomy
            t += 1


@pytest.mark.slow
def test_trichotomy_weight_pow2_matches_exact_full_range():
    for n in range(2, 513):
        t = 1
        while (1 << t) <= n:
            assert trichotomy_weight_pow2(n, t) is weight_exact(Esbf(n, 1 << t)).trichotomy
            t += 1


def test_trichotomy_weight_pow2_requires_valid_t():
    with pytest.raises(InvalidParametersError):
        trichotomy_weight_pow2(3, 2)


@pytest.mark.parametrize("n,t,expected", [(7, 1, 64), (8, 1, 120), (15, 2, 1 << 14)])
def test_weight_pow2_closed_examples(n, t, expected):
    assert weight_pow2_closed(n, t).nearest == expected


def test_weight_pow2_closed_matches_exact():
    for n in range(2, 70):
        t = 1
        while (1 << t) <= n:
            assert weight_pow2_closed(n, t).nearest == _exact(n, 1 << t)
            t += 1


@pytest.mark.parametrize("n,t", [(8, 1), (16, 2), (3, 1), (40, 4), (33, 5)])
def test_weight_pow2_plus1_closed_examples(n, t):
    result = weight_pow2_plus1_closed(n, t)
    exact = _exact(n, (1 << t) + 1)
    assert result.lower <= exact <= result.upper
    assert result.nearest == exact


def test_quarter_trichotomy_pow2_plus1_claims_hold():
    for n in range(3, 150):
        t = 1
        while (1 << t) + 1 <= n:
            claim = quarter_trichotomy_pow2_plus1(n, t)
            if claim is not None:
                assert Trichotomy.compare(_exact(n, (1 << t) + 1), 1 << (n - 2)) is claim
            t += 1


def test_quarter_trichotomy_pow2_plus1_makes_no_claim_for_odd_block():
    # n = 4*1 + 1: l' odd and r >= 1
    assert quarter_trichotomy_pow2_plus1(5, 1) is None
    assert quarter_trichotomy_pow2_plus1(8, 1) is Trichotomy.EQUAL
    assert quarter_trichotomy_pow2_plus1(9, 1) is Trichotomy.LESS


def test_weight_two_powers_closed_examples():
    assert weight_two_powers_closed(12, 1, 2).nearest == 1716
    assert weight_two_powers_closed(24, 2, 3).nearest > 1 << 23
    assert weight_two_powers_closed(24, 2, 4).nearest < 1 << 23


def test_weight_two_powers_closed_matches_exact():
    for n in range(6, 70):
        t = 1
        while (1 << t) + (1 << (t + 1)) <= n:
            s = t + 1
            while (1 << t) + (1 << s) <= n:
                assert weight_two_powers_closed(n, t, s).nearest == _exact(n, (1 << t) + (1 << s))
                s += 1
            t += 1


def test_weight_two_powers_closed_rejects_bad_exponents():
    with pytest.raises(InvalidParametersError):
        weight_two_powers_closed(20, 2, 2)
    with pytest.raises(InvalidParametersError):
        weight_two_powers_closed(9, 1, 3)


def test_weight_two_powers_closed_at_top_exponent():
    # d = 2 + 8 = n, so only the all-ones input is in the support
    assert weight_exact(Esbf(10, 10)).weight == 1
    assert weight_two_powers_closed(10, 1, 3).nearest == 1


@pytest.mark.parametrize("n,t", [(10, 2), (40, 3), (100, 4)])
def test_pow2_coefficients_strictly_decrease(n, t):
    coefficients = pow2_coefficients(n, t)
    assert [j for j, _, _ in coefficients] == list(range(1, 1 << t, 2))
    for (_, lo, hi), (_, next_lo, next_hi) in zip(coefficients, coefficients[1:]):
        assert lo <= hi
        assert next_hi < lo


@pytest.mark.slow
def test_pow2_coefficients_strictly_decrease_full_range():
    for t in range(1, 9):
        for n in range(1, 513):
            coefficients = pow2_coefficients(n, t)
            for (_, lo, _), (j, _, next_hi) in zip(coefficients, coefficients[1:]):
                assert next_hi < lo, (n, t, j)
